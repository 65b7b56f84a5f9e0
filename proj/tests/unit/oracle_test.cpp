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

#include "pdcsim/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "pdcsim/errors.hpp"
#include "pdcsim/metrics.hpp"

using namespace pdcsim;

namespace {

OracleConfig make(PairLaw law, double mu, double es, double ei) {
    OracleConfig c;
    c.distribution = PairNumberDistribution(law, mu);
    c.signal_efficiency = es;
    c.idler_efficiency = ei;
    return c;
}

TotalsView aligned(const SlotProbabilities &p) { return expected_totals(p, 1.0); }

}  // namespace

TEST(Oracle, VacuumIsSilent) {
    const auto p = expected_rates(make(PairLaw::thermal, 0.0, 0.5, 0.5));
    EXPECT_EQ(p.trigger, 0.0);
    EXPECT_EQ(p.trig_id1, 0.0);
    EXPECT_EQ(p.triple, 0.0);
    EXPECT_EQ(p.idler1_single, 0.0);
}

TEST(Oracle, SinglePairCannotSplit) {
    OracleConfig c = make(PairLaw::thermal, 0.0, 1.0, 1.0);
    c.pmf = std::vector<double>{0.0, 1.0};
    const auto p = expected_rates(c);
    EXPECT_DOUBLE_EQ(p.trigger, 1.0);
    EXPECT_DOUBLE_EQ(p.trig_id1, 0.5);
    EXPECT_DOUBLE_EQ(p.trig_id2, 0.5);
    EXPECT_EQ(p.triple, 0.0);
    EXPECT_EQ(p.tail_mass, 0.0);
}

TEST(Oracle, ThermalLowMuG2) {
    // Low-mu expansion of the enumeration: g2 -> 2 mu (2 - eta_s) for a
    // single-mode thermal source, i.e. 4 mu only as eta_s -> 0.
    const double mu = 1e-3;
    for (double es : {0.4, 0.01}) {
        const auto p = expected_rates(make(PairLaw::thermal, mu, es, 0.151));
        const double g2 = g2_zero(aligned(p)).value;
        EXPECT_NEAR(g2 / (2.0 * mu * (2.0 - es)), 1.0, 0.01) << es;
    }
    const auto low = expected_rates(make(PairLaw::thermal, mu, 0.01, 0.151));
    EXPECT_NEAR(g2_zero(aligned(low)).value / (4.0 * mu), 1.0, 0.05);
}

TEST(Oracle, LowMuLaws) {
    const double mu = 1e-3;
    const double ei = 0.151;
    const auto th = expected_rates(make(PairLaw::thermal, mu, 0.01, ei));
    const auto po = expected_rates(make(PairLaw::poisson, mu, 0.01, ei));
    EXPECT_NEAR(g2_zero(aligned(po)).value / (2.0 * mu), 1.0, 0.05);
    // Two-pair probability is mu^2 (thermal) vs mu^2 / 2 (Poisson).
    EXPECT_NEAR(car_hop(aligned(th)).value * mu * ei, 1.0, 0.05);
    EXPECT_NEAR(car_hop(aligned(po)).value * mu * ei, 2.0, 0.1);
    for (const auto &p : {th, po}) {
        const auto off = expected_offset_rates(p);
        const Metric rep = car_rep(aligned(p), expected_totals(p, off, 1.0));
        EXPECT_NEAR(rep.value * mu, 1.0, 0.05);
    }
}

TEST(Oracle, AgreesWithGeneratingFunction) {
    for (PairLaw law : {PairLaw::thermal, PairLaw::poisson}) {
        for (double mu : {1e-3, 0.05, 0.24, 1.5}) {
            OracleConfig c = make(law, mu, 0.37, 0.15);
            c.splitter_ratio = 0.3;
            c.noise = {1e-4, 2e-3, 5e-3};
            c.gate_overlap = 0.8;
            const auto a = expected_rates(c);
            const auto b = generating_function_rates(c);
            for (auto f : {&SlotProbabilities::trigger, &SlotProbabilities::trig_id1, &SlotProbabilities::trig_id2,
                           &SlotProbabilities::triple, &SlotProbabilities::idler1_single,
                           &SlotProbabilities::idler2_single, &SlotProbabilities::idler_both_single}) {
                EXPECT_NEAR(a.*f, b.*f, 1e-12 + 1e-9 * std::abs(b.*f)) << law_name(law) << " mu=" << mu;
            }
        }
    }
}

TEST(Oracle, HierarchyAndTail) {
    const auto p = expected_rates(make(PairLaw::thermal, 0.24, 0.5, 0.15));
    EXPECT_LE(p.triple, std::min(p.trig_id1, p.trig_id2));
    EXPECT_LE(p.trig_id1, p.trigger);
    EXPECT_LT(p.tail_mass, 1e-10);
}

TEST(Oracle, TruncationStable) {
    const double mu = 0.24;
    const PairNumberDistribution d(PairLaw::thermal, mu);
    OracleConfig a = make(PairLaw::thermal, mu, 0.5, 0.15);
    OracleConfig b = a;
    b.distribution = PairNumberDistribution(PairLaw::thermal, mu, d.n_max() + 10);
    const auto pa = expected_rates(a);
    const auto pb = expected_rates(b);
    EXPECT_NEAR(pa.trigger, pb.trigger, 1e-12);
    EXPECT_NEAR(pa.triple, pb.triple, 1e-12);
    EXPECT_NEAR(pa.trig_id1, pb.trig_id1, 1e-12);
}

TEST(Offset, IndependenceProducts) {
    OracleConfig c = make(PairLaw::thermal, 0.1, 0.5, 0.15);
    c.noise = {1e-4, 1e-3, 1e-3};
    const auto p = expected_rates(c);
    const auto o = expected_offset_rates(p);
    EXPECT_DOUBLE_EQ(o.trig_id1, p.trigger * p.idler1_single);
    EXPECT_DOUBLE_EQ(o.triple, p.trigger * p.idler_both_single);
    EXPECT_EQ(p.idler1_single, p.idler2_single);
    // Poisson light splits into independent ports, so the both-click
    // marginal factorises; thermal light bunches and exceeds the product.
    OracleConfig po = c;
    po.distribution = PairNumberDistribution(PairLaw::poisson, 0.1);
    const auto q = expected_rates(po);
    EXPECT_NEAR(q.idler_both_single, q.idler1_single * q.idler2_single, 1e-15);
    EXPECT_GT(p.idler_both_single, p.idler1_single * p.idler2_single);
}

TEST(Offset, AccidentalsQuadraticInMu) {
    const auto a = expected_offset_rates(make(PairLaw::thermal, 1e-4, 0.5, 0.15));
    const auto b = expected_offset_rates(make(PairLaw::thermal, 2e-4, 0.5, 0.15));
    EXPECT_NEAR(b.trig_id1 / a.trig_id1, 4.0, 0.01);
}

TEST(Oracle, InvalidConfig) {
    OracleConfig c = make(PairLaw::thermal, 0.1, 1.5, 0.15);
    EXPECT_FALSE(validate(c).empty());
    EXPECT_THROW((void)expected_rates(c), DomainError);
}
