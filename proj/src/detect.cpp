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

#include "pdcsim/detect.hpp"

#include <cmath>
#include <numbers>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

constexpr double kFourLn2 = 4.0 * std::numbers::ln2;

bool photon_click(unsigned n, double p_single, RandomStream &rng) {
    if (n == 0 || p_single <= 0.0) {
        return false;
    }
    if (p_single >= 1.0) {
        return true;
    }
    return rng.uniform() < -std::expm1(n * std::log1p(-p_single));
}

}  // namespace

std::vector<std::string> validate(const DetectorModel &d, const std::string &label) {
    std::vector<std::string> out;
    if (!(d.efficiency >= 0.0 && d.efficiency <= 1.0)) {
        out.push_back(label + ".efficiency must be in [0, 1]");
    }
    if (!(d.dark_rate_hz >= 0.0) || !std::isfinite(d.dark_rate_hz)) {
        out.push_back(label + ".dark_rate_hz must be >= 0");
    }
    if (!(d.dead_time_ns >= 0.0) || !std::isfinite(d.dead_time_ns)) {
        out.push_back(label + ".dead_time_ns must be >= 0");
    }
    if (d.mode == DetectorMode::gated && !(d.gate_fwhm_ns > 0.0)) {
        out.push_back(label + ".gate_fwhm_ns must be > 0 for a gated detector");
    }
    if (!(d.nominal_gate_ns >= 0.0)) {
        out.push_back(label + ".nominal_gate_ns must be >= 0");
    }
    return out;
}

long DelaySetting::slot_offset() const {
    if (!(repetition_period_ns > 0.0)) {
        throw DomainError("repetition period must be positive");
    }
    return static_cast<long>(std::ceil(delay_ns / repetition_period_ns - 0.5));
}

double DelaySetting::sub_slot_delay_ns() const {
    return delay_ns - static_cast<double>(slot_offset()) * repetition_period_ns;
}

double click_probability(unsigned n, const DetectorModel &det, double overlap, double p_noise) {
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw DomainError("gate overlap outside [0, 1]");
    }
    const double miss = n == 0 ? 1.0 : std::pow(1.0 - det.efficiency * overlap, static_cast<double>(n));
    return 1.0 - miss * (1.0 - p_noise);
}

double gate_overlap(double delay_ns, const DetectorModel &det) {
    if (det.mode != DetectorMode::gated) {
        throw ContractError("gate overlap is defined for gated detectors only");
    }
    const double x = delay_ns / det.gate_fwhm_ns;
    return std::exp(-kFourLn2 * x * x);
}

double effective_window_ns(const DetectorModel &det, double repetition_period_ns) {
    if (det.mode == DetectorMode::gated) {
        return det.gate_fwhm_ns * std::sqrt(std::numbers::pi / kFourLn2);
    }
    return repetition_period_ns;
}

double noise_probability(const DetectorModel &det, double extra_rate_hz, double repetition_period_ns) {
    const double rate = det.dark_rate_hz + extra_rate_hz;
    if (!(rate >= 0.0)) {
        throw DomainError("negative noise rate");
    }
    return -std::expm1(-rate * effective_window_ns(det, repetition_period_ns) * 1e-9);
}

std::vector<double> apply_dead_time(std::span<const double> times, double dead_time_ns) {
    std::vector<double> out;
    out.reserve(times.size());
    DeadTimeFilter f(dead_time_ns);
    for (double t : times) {
        if (f.accept(t)) {
            out.push_back(t);
        }
    }
    return out;
}

bool DeadTimeFilter::accept(double t) {
    if (t < prev_) {
        throw ContractError("dead-time input is not time ordered");
    }
    prev_ = t;
    if (t - last_ < dead_) {
        return false;
    }
    last_ = t;
    return true;
}

BackgroundRates BackgroundModel::at(double power_uw) const {
    if (!(power_uw >= 0.0)) {
        throw DomainError("pump power must be >= 0");
    }
    const double idler = idler_hz + idler_per_uw * power_uw;
    return {trigger_hz + trigger_per_uw * power_uw, idler, idler};
}

std::vector<std::string> validate(const BackgroundModel &bg) {
    std::vector<std::string> out;
    auto check = [&](double v, const char *name) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            out.push_back(std::string("background.") + name + " must be finite and >= 0");
        }
    };
    check(bg.trigger_hz, "trigger_hz");
    check(bg.trigger_per_uw, "trigger_per_uw");
    check(bg.idler_hz, "idler_hz");
    check(bg.idler_per_uw, "idler_per_uw");
    return out;
}

NoiseProbabilities noise_probabilities(const DetectorSet &dets, const BackgroundRates &bg, double period_ns) {
    return {noise_probability(dets.trigger, bg.trigger_hz, period_ns),
            noise_probability(dets.idler1, bg.idler1_hz, period_ns),
            noise_probability(dets.idler2, bg.idler2_hz, period_ns)};
}

IdlerOverlaps idler_overlaps(const DetectorSet &dets, const DelaySetting &delay) {
    const double dt = delay.sub_slot_delay_ns();
    auto one = [&](const DetectorModel &d) { return d.mode == DetectorMode::gated ? gate_overlap(dt, d) : 1.0; };
    return {one(dets.idler1), one(dets.idler2)};
}

ClickTriple photon_clicks(const PhotonTriple &ph, const DetectorSet &dets, const IdlerOverlaps &g,
                          RandomStream &rng) {
    ClickTriple c;
    c.trigger = photon_click(ph.signal, dets.trigger.efficiency, rng);
    c.idler1 = photon_click(ph.idler1, dets.idler1.efficiency * g.idler1, rng);
    c.idler2 = photon_click(ph.idler2, dets.idler2.efficiency * g.idler2, rng);
    return c;
}

ClickTriple detect_pulse(const PhotonTriple &ph, const DetectorSet &dets, const DelaySetting &delay,
                         const BackgroundRates &bg, RandomStream &rng) {
    ClickTriple c = photon_clicks(ph, dets, idler_overlaps(dets, delay), rng);
    const NoiseProbabilities p = noise_probabilities(dets, bg, delay.repetition_period_ns);
    c.trigger = rng.bernoulli(p.trigger) || c.trigger;
    c.idler1 = rng.bernoulli(p.idler1) || c.idler1;
    c.idler2 = rng.bernoulli(p.idler2) || c.idler2;
    return c;
}

}  // namespace pdcsim
