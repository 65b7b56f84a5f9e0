// Copyright 2026 The pdcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdcsim/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

struct SlotEvent {
    std::uint64_t slot;
    ClickTriple clicks;
    double trigger_offset_ns;  // noise-only trigger clicks land anywhere in the slot
};

// Turns the per-slot ingredients (pairs and noise flags) into clicks.
struct SlotResolver {
    const SimulationSetup &setup;
    IdlerOverlaps overlaps;
    double period_ns;

    std::optional<SlotEvent> operator()(std::uint64_t slot, unsigned n, bool noise_t, bool noise_1, bool noise_2,
                                        RandomStream &rng) const {
        ClickTriple pc;
        if (n > 0) {
            const PhotonTriple ph =
                propagate_pulse(n, setup.signal_channel, setup.idler_channel, setup.splitter_ratio, rng);
            pc = photon_clicks(ph, setup.detectors, overlaps, rng);
        }
        SlotEvent e{slot, {pc.trigger || noise_t, pc.idler1 || noise_1, pc.idler2 || noise_2}, 0.0};
        if (!pc.trigger && noise_t) {
            e.trigger_offset_ns = rng.uniform() * period_ns;
        }
        if (!(e.clicks.trigger || e.clicks.idler1 || e.clicks.idler2)) {
            return std::nullopt;
        }
        return e;
    }
};

// Dead time then coincidence counting, strictly in slot order.
class Pipeline {
   public:
    Pipeline(const SimulationSetup &setup, const RunOptions &opt, std::vector<long> counter_offsets)
        : period_(setup.delay.repetition_period_ns),
          trigger_(setup.dead_time ? setup.detectors.trigger.dead_time_ns : 0.0),
          idler1_(setup.dead_time ? setup.detectors.idler1.dead_time_ns : 0.0),
          idler2_(setup.dead_time ? setup.detectors.idler2.dead_time_ns : 0.0),
          counter_(std::move(counter_offsets)),
          sink_(opt.records) {}

    void push(const SlotEvent &e) {
        const double t0 = static_cast<double>(e.slot) * period_;
        PulseSlotRecord r{e.slot, e.clicks.trigger, e.clicks.idler1, e.clicks.idler2};
        if (r.trigger) {
            r.trigger = trigger_.accept(t0 + e.trigger_offset_ns);
        }
        if (r.idler1) {
            r.idler1 = idler1_.accept(t0);
        }
        if (r.idler2) {
            r.idler2 = idler2_.accept(t0);
        }
        if (!(r.trigger || r.idler1 || r.idler2)) {
            return;
        }
        ++clicked_;
        counter_.add(r);
        if (sink_) {
            sink_->push_back(r);
        }
    }

    RunResult finish(std::uint64_t n_slots, double sub_slot_delay) const {
        RunResult out;
        out.totals = counter_.totals(n_slots);
        for (auto &t : out.totals) {
            t.sub_slot_delay_ns = sub_slot_delay;
        }
        out.clicked_slots = clicked_;
        return out;
    }

   private:
    double period_;
    DeadTimeFilter trigger_;
    DeadTimeFilter idler1_;
    DeadTimeFilter idler2_;
    CoincidenceCounter counter_;
    std::vector<PulseSlotRecord> *sink_;
    std::uint64_t clicked_ = 0;
};

std::vector<long> counter_offsets(const SimulationSetup &setup, const RunOptions &opt) {
    if (opt.offsets.empty()) {
        throw DomainError("at least one slot offset is required");
    }
    const long base = setup.delay.slot_offset();
    std::vector<long> out;
    for (long m : opt.offsets) {
        if (m < 0 || base + m < 0) {
            throw DomainError("negative whole-period trigger-idler offsets are not supported");
        }
        if (static_cast<std::uint64_t>(base + m) >= opt.n_pulses) {
            throw DomainError("slot offset must be smaller than the number of pulses");
        }
        out.push_back(base + m);
    }
    return out;
}

void check_setup(const SimulationSetup &setup, const RunOptions &opt) {
    if (auto errs = validate(setup); !errs.empty()) {
        throw DomainError(errs.front());
    }
    if (opt.n_pulses == 0) {
        throw DomainError("number of pulses must be > 0");
    }
    if (opt.batch_slots == 0) {
        throw DomainError("batch size must be > 0");
    }
}

std::vector<std::uint64_t> with_tag(const std::vector<std::uint64_t> &tags, std::uint64_t last) {
    std::vector<std::uint64_t> t = tags;
    t.push_back(last);
    return t;
}

}  // namespace

std::vector<std::string> validate(const SimulationSetup &s) {
    std::vector<std::string> out;
    auto add = [&](std::vector<std::string> v) { out.insert(out.end(), v.begin(), v.end()); };
    add(validate(s.signal_channel, "signal_channel"));
    add(validate(s.idler_channel, "idler_channel"));
    add(validate(s.detectors.trigger, "detectors.trigger"));
    add(validate(s.detectors.idler1, "detectors.idler1"));
    add(validate(s.detectors.idler2, "detectors.idler2"));
    if (!(s.splitter_ratio >= 0.0 && s.splitter_ratio <= 1.0)) {
        out.push_back("splitter_ratio must be in [0, 1]");
    }
    if (!(s.delay.repetition_period_ns > 0.0)) {
        out.push_back("repetition period must be > 0");
    }
    for (double v : {s.background.trigger_hz, s.background.idler1_hz, s.background.idler2_hz}) {
        if (!(v >= 0.0)) {
            out.push_back("background rates must be >= 0");
            break;
        }
    }
    return out;
}

OracleConfig oracle_config(const SimulationSetup &s) {
    OracleConfig c;
    c.distribution = s.pairs;
    c.signal_efficiency = s.signal_channel.transmission() * s.detectors.trigger.efficiency;
    // Unequal idler detectors fold into an effective splitter: per photon,
    // port k clicks with T r_k eta_k g_k either way.
    const IdlerOverlaps g = idler_overlaps(s.detectors, s.delay);
    const double t = s.idler_channel.transmission();
    const double a1 = t * s.splitter_ratio * s.detectors.idler1.efficiency * g.idler1;
    const double a2 = t * (1.0 - s.splitter_ratio) * s.detectors.idler2.efficiency * g.idler2;
    c.idler_efficiency = a1 + a2;
    c.splitter_ratio = c.idler_efficiency > 0.0 ? a1 / c.idler_efficiency : s.splitter_ratio;
    c.gate_overlap = 1.0;
    c.noise = noise_probabilities(s.detectors, s.background, s.delay.repetition_period_ns);
    return c;
}

RunResult simulate(const SimulationSetup &setup, const RunOptions &opt) {
    check_setup(setup, opt);
    Pipeline pipe(setup, opt, counter_offsets(setup, opt));
    const double period = setup.delay.repetition_period_ns;
    const SlotResolver resolve{setup, idler_overlaps(setup.detectors, setup.delay), period};
    const NoiseProbabilities noise = noise_probabilities(setup.detectors, setup.background, period);

    // A slot is trivial when no pair is generated and no detector sees a
    // noise count; it then produces no click.
    const double p0 = setup.pairs.probability(0);
    const std::array<double, 4> c{1.0 - p0, noise.trigger, noise.idler1, noise.idler2};
    std::array<double, 4> first{};  // P(component i is the first one present)
    double none_before = 1.0;
    double log_trivial = 0.0;
    for (int i = 0; i < 4; ++i) {
        first[i] = none_before * c[i];
        none_before *= 1.0 - c[i];
        log_trivial += i == 0 ? std::log(p0) : std::log1p(-c[i]);
    }
    const double nontrivial = first[0] + first[1] + first[2] + first[3];

    auto run_batch = [&](std::uint64_t b, std::vector<SlotEvent> &events) {
        RandomStream rng(opt.master_seed, with_tag(opt.tags, b));
        const std::uint64_t begin = b * opt.batch_slots;
        const std::uint64_t end = std::min(opt.n_pulses, begin + opt.batch_slots);
        std::uint64_t s = begin;
        while (s < end) {
            const std::uint64_t skip = rng.geometric(log_trivial);
            if (skip >= end - s) {
                break;
            }
            s += skip;
            const double u = rng.uniform() * nontrivial;
            int lead = 0;
            double acc = first[0];
            while (lead < 3 && u >= acc) {
                acc += first[++lead];
            }
            std::array<bool, 4> on{};
            on[lead] = true;
            for (int i = lead + 1; i < 4; ++i) {
                on[i] = rng.bernoulli(c[i]);
            }
            const unsigned n = on[0] ? setup.pairs.sample_nonzero(rng) : 0;
            if (auto e = resolve(s, n, on[1], on[2], on[3], rng)) {
                events.push_back(*e);
            }
            ++s;
        }
    };

    const std::uint64_t n_batches = (opt.n_pulses + opt.batch_slots - 1) / opt.batch_slots;
    unsigned workers = opt.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.workers;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_batches));
    const std::uint64_t group = std::uint64_t{8} * workers;
    std::vector<std::vector<SlotEvent>> events;
    for (std::uint64_t g0 = 0; g0 < n_batches; g0 += group) {
        const std::uint64_t count = std::min(group, n_batches - g0);
        events.assign(count, {});
        if (workers <= 1) {
            for (std::uint64_t i = 0; i < count; ++i) {
                run_batch(g0 + i, events[i]);
            }
        } else {
            std::atomic<std::uint64_t> next{0};
            std::vector<std::thread> pool;
            std::exception_ptr failure;
            std::atomic<bool> failed{false};
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::uint64_t i; (i = next.fetch_add(1)) < count;) {
                        try {
                            run_batch(g0 + i, events[i]);
                        } catch (...) {
                            if (!failed.exchange(true)) {
                                failure = std::current_exception();
                            }
                        }
                    }
                });
            }
            for (auto &t : pool) {
                t.join();
            }
            if (failure) {
                std::rethrow_exception(failure);
            }
        }
        for (const auto &batch : events) {
            for (const auto &e : batch) {
                pipe.push(e);
            }
        }
    }
    return pipe.finish(opt.n_pulses, setup.delay.sub_slot_delay_ns());
}

RunResult simulate_reference(const SimulationSetup &setup, const RunOptions &opt) {
    check_setup(setup, opt);
    Pipeline pipe(setup, opt, counter_offsets(setup, opt));
    const double period = setup.delay.repetition_period_ns;
    const SlotResolver resolve{setup, idler_overlaps(setup.detectors, setup.delay), period};
    const NoiseProbabilities noise = noise_probabilities(setup.detectors, setup.background, period);
    RandomStream rng(opt.master_seed, with_tag(opt.tags, ~std::uint64_t{0}));
    for (std::uint64_t s = 0; s < opt.n_pulses; ++s) {
        const unsigned n = setup.pairs.sample(rng);
        const bool nt = rng.bernoulli(noise.trigger);
        const bool n1 = rng.bernoulli(noise.idler1);
        const bool n2 = rng.bernoulli(noise.idler2);
        if (auto e = resolve(s, n, nt, n1, n2, rng)) {
            pipe.push(*e);
        }
    }
    return pipe.finish(opt.n_pulses, setup.delay.sub_slot_delay_ns());
}

}  // namespace pdcsim
