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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pdcsim/counter.hpp"
#include "pdcsim/errors.hpp"
#include "pdcsim/metrics.hpp"
#include "pdcsim/oracle.hpp"

using namespace pdcsim;

namespace {

SimulationSetup typical_setup(double mu, PairLaw law = PairLaw::thermal) {
    SimulationSetup s;
    s.pairs = PairNumberDistribution(law, mu);
    s.signal_channel.add("budget", 0.97 * 0.78 * 0.995 * 0.965 * 0.89);
    s.idler_channel.add("waveguide_fiber", 0.663).add("wdm_idler", 0.991);
    s.background = {1000.0, 4e4, 4e4};
    s.dead_time = false;
    return s;
}

RunOptions opts(std::uint64_t n, std::uint64_t seed = 42) {
    RunOptions o;
    o.n_pulses = n;
    o.master_seed = seed;
    o.tags = {7};
    return o;
}

// |observed - expected| in binomial standard deviations.
double z(std::uint64_t count, double p, std::uint64_t n) {
    const double nn = static_cast<double>(n);
    const double sd = std::sqrt(nn * p * (1.0 - p));
    return sd > 0.0 ? std::abs(static_cast<double>(count) - nn * p) / sd : (count == 0 ? 0.0 : INFINITY);
}

void expect_matches_oracle(const SimulationSetup &s, const RunResult &r) {
    const auto p = expected_rates(oracle_config(s));
    const auto &t = r.totals[0];
    EXPECT_LT(z(t.trigger, p.trigger, t.n_slots), 4.0);
    EXPECT_LT(z(t.idler1, p.trig_id1, t.n_slots), 4.0);
    EXPECT_LT(z(t.idler2, p.trig_id2, t.n_slots), 4.0);
    EXPECT_LT(z(t.triple, p.triple, t.n_slots), 4.0);
}

}  // namespace

TEST(Simulate, MatchesOracleThermal) {
    const auto s = typical_setup(0.24);
    expect_matches_oracle(s, simulate(s, opts(2'000'000)));
}

TEST(Simulate, MatchesOraclePoissonUnbalanced) {
    auto s = typical_setup(0.05, PairLaw::poisson);
    s.splitter_ratio = 0.3;
    s.detectors.idler2.efficiency = 0.3;
    s.delay = {0.4, 100.0};
    expect_matches_oracle(s, simulate(s, opts(2'000'000)));
}

TEST(Simulate, ReferenceEngineAgrees) {
    const auto s = typical_setup(0.1);
    const RunResult fast = simulate(s, opts(1'000'000));
    const RunResult ref = simulate_reference(s, opts(1'000'000));
    const auto &a = fast.totals[0];
    const auto &b = ref.totals[0];
    for (auto [x, y] : {std::pair{a.trigger, b.trigger}, std::pair{a.idler1, b.idler1},
                        std::pair{a.idler2, b.idler2}, std::pair{a.triple, b.triple}}) {
        EXPECT_LT(std::abs(static_cast<double>(x) - static_cast<double>(y)),
                  4.0 * std::sqrt(static_cast<double>(x + y) + 1.0));
    }
    expect_matches_oracle(s, ref);
}

TEST(Simulate, WorkerCountDoesNotChangeResults) {
    auto s = typical_setup(0.05);
    s.dead_time = true;
    RunOptions o = opts(3'000'000);
    o.offsets = {0, 1, 3};
    o.batch_slots = 1 << 16;
    o.workers = 1;
    const RunResult one = simulate(s, o);
    o.workers = 3;
    const RunResult three = simulate(s, o);
    ASSERT_EQ(one.totals.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(one.totals[k], three.totals[k]);
    }
    EXPECT_EQ(one.clicked_slots, three.clicked_slots);
}

TEST(Simulate, SeedsAndTagsSeparateStreams) {
    const auto s = typical_setup(0.05);
    const RunResult a = simulate(s, opts(500'000, 1));
    const RunResult b = simulate(s, opts(500'000, 1));
    const RunResult c = simulate(s, opts(500'000, 2));
    EXPECT_EQ(a.totals[0], b.totals[0]);
    EXPECT_NE(a.totals[0], c.totals[0]);
}

TEST(Simulate, RecordsReproduceTotals) {
    const auto s = typical_setup(0.05);
    std::vector<PulseSlotRecord> recs;
    RunOptions o = opts(400'000);
    o.offsets = {0, 2};
    o.records = &recs;
    const RunResult r = simulate(s, o);
    EXPECT_EQ(r.clicked_slots, recs.size());
    EXPECT_EQ(accumulate(recs, o.n_pulses, 0), r.totals[0]);
    EXPECT_EQ(accumulate(recs, o.n_pulses, 2), r.totals[1]);
}

TEST(Simulate, PerfectDetectionIsPhotonPresence) {
    SimulationSetup s;
    s.pairs = PairNumberDistribution(PairLaw::thermal, 0.3);
    s.detectors.trigger = {1.0, 0.0, 0.0, 1.16, 2.5, DetectorMode::free_running};
    s.detectors.idler1 = {1.0, 0.0, 0.0, 1.16, 2.5, DetectorMode::gated};
    s.detectors.idler2 = s.detectors.idler1;
    s.dead_time = false;
    const RunResult r = simulate(s, opts(500'000));
    const auto &t = r.totals[0];
    // Every pair is seen by the trigger, and every triggered slot has at
    // least one idler click.
    EXPECT_EQ(t.trigger, r.clicked_slots);
    EXPECT_EQ(t.idler1 + t.idler2 - t.triple, t.trigger);
}

TEST(Simulate, FarDelayRemovesCorrelation) {
    auto s = typical_setup(0.05);
    s.delay = {50.0, 100.0};
    const RunResult r = simulate(s, opts(2'000'000));
    EXPECT_EQ(r.totals[0].slot_offset, 0);
    EXPECT_EQ(r.totals[0].sub_slot_delay_ns, 50.0);
    expect_matches_oracle(s, r);
    const auto p = expected_rates(oracle_config(s));
    // Only noise remains in the idler gates.
    EXPECT_NEAR(p.trig_id1 / p.trigger, p.idler1_single, 1e-12);
}

TEST(Simulate, WholePeriodDelayUsesOffsetSlots) {
    auto s = typical_setup(0.05);
    s.delay = {300.0, 100.0};
    RunOptions o = opts(1'000'000);
    const RunResult r = simulate(s, o);
    EXPECT_EQ(r.totals[0].slot_offset, 3);
    s.delay = {-100.0, 100.0};
    EXPECT_THROW((void)simulate(s, o), DomainError);
}

TEST(Simulate, LargeOffsetApproachesIdlerSingles) {
    auto s = typical_setup(0.01);
    RunOptions o = opts(3'000'000);
    o.offsets = {0, 5};
    const RunResult r = simulate(s, o);
    const auto p = expected_rates(oracle_config(s));
    const auto &t = r.totals[1];
    const double ratio = static_cast<double>(t.idler1) / static_cast<double>(t.trigger);
    EXPECT_NEAR(ratio, p.idler1_single, 4.0 * std::sqrt(p.idler1_single / static_cast<double>(t.trigger)));
}

TEST(Simulate, DeadTimeCensorsTriggers) {
    auto s = typical_setup(1.0);
    s.detectors.trigger.dead_time_ns = 150.0;
    s.dead_time = true;
    const RunResult r = simulate(s, opts(500'000));
    s.dead_time = false;
    const RunResult free = simulate(s, opts(500'000));
    EXPECT_LT(r.totals[0].trigger, free.totals[0].trigger);
    EXPECT_TRUE(r.totals[0].hierarchy_holds());
}

TEST(Simulate, InvalidInputs) {
    auto s = typical_setup(0.05);
    RunOptions o = opts(0);
    EXPECT_THROW((void)simulate(s, o), DomainError);
    o = opts(100);
    o.offsets = {-1};
    EXPECT_THROW((void)simulate(s, o), DomainError);
    s.splitter_ratio = 2.0;
    EXPECT_FALSE(validate(s).empty());
    EXPECT_THROW((void)simulate(s, opts(100)), DomainError);
}

TEST(Simulate, BrightnessRoundTrip) {
    auto s = typical_setup(0.05);
    s.background = {};
    s.detectors.trigger.dark_rate_hz = 0.0;
    const RunResult r = simulate(s, opts(2'000'000));
    const std::vector<double> tr{s.signal_channel.transmission()};
    const Metric b = brightness(TotalsView::of(r.totals[0]), tr, s.detectors.trigger.efficiency, 1e7);
    EXPECT_NEAR(b.value / 0.05, 1.0, 0.05);
}
