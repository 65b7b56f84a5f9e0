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

#include "pdcsim/wdm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "pdcsim/errors.hpp"

using namespace pdcsim;
using namespace pdcsim::wdm;

namespace {

std::vector<CouplerMeasurement> default_points() {
    return {{4000.0, 1576.0, 0.991}, {2750.0, 1576.0, 0.787}, {4000.0, 803.0, 0.033}, {2750.0, 803.0, 0.0177}};
}

ModeBeatModel default_model() { return fit_beat_model(default_points(), CouplerGeometry{}); }

}  // namespace

TEST(Geometry, GapProfile) {
    CouplerGeometry g;
    EXPECT_DOUBLE_EQ(g.total_length_um(), 14000.0);
    EXPECT_NEAR(g.gap_at(0.0), 165.0, 1e-9);
    EXPECT_NEAR(g.gap_at(g.total_length_um()), 165.0, 1e-9);
    EXPECT_DOUBLE_EQ(g.gap_at(7000.0), 13.0);
    double prev = g.gap_at(0.0);
    for (double z = 0.0; z <= g.total_length_um(); z += 10.0) {
        const double d = g.gap_at(z);
        EXPECT_GE(d, 13.0 - 1e-12);
        EXPECT_LT(std::abs(d - prev), 2.0) << "discontinuity at " << z;
        prev = d;
    }
    EXPECT_THROW((void)g.gap_at(-1.0), DomainError);
}

TEST(Geometry, Validation) {
    CouplerGeometry g;
    g.port_gap_um = 5.0;
    EXPECT_FALSE(validate(g).empty());
    g = CouplerGeometry{};
    g.stem_length_um = -1.0;
    EXPECT_FALSE(validate(g).empty());
}

TEST(Coupling, KappaDecreasesWithGap) {
    BandCoupling b{1576.0, 0.05, 3.0};
    EXPECT_GT(b.kappa(13.0), 0.0);
    EXPECT_GT(b.kappa(13.0), b.kappa(14.0));
}

TEST(Phase, EmptyCouplerHasNoPhase) {
    CouplerGeometry g;
    g.stem_length_um = 0.0;
    g.with_bends = false;
    EXPECT_EQ(phase_difference(g, default_model(), 1576.0), 0.0);
}

TEST(Phase, StemAddsKappaTimesLength) {
    const ModeBeatModel m = default_model();
    CouplerGeometry g;
    const double p1 = phase_difference(g, m, 1576.0);
    g.stem_length_um *= 2.0;
    const double p2 = phase_difference(g, m, 1576.0);
    EXPECT_NEAR(p2 - p1, m.idler.kappa(13.0) * 4000.0, 1e-12);
}

TEST(Phase, PiGivesFullTransfer) {
    CouplerGeometry g;
    g.with_bends = false;
    ModeBeatModel m;
    m.idler = {1576.0, 1.0, 1.0};
    m.signal = {803.0, 0.5, 1.0};
    g.stem_length_um = std::numbers::pi / m.idler.kappa(g.center_gap_um);
    EXPECT_NEAR(phase_difference(g, m, 1576.0), std::numbers::pi, 1e-12);
    EXPECT_NEAR(cross_coupling_fraction(g, m, 1576.0), 1.0, 1e-15);
}

TEST(Phase, OutsideBandsThrows) {
    EXPECT_THROW((void)phase_difference(CouplerGeometry{}, default_model(), 1200.0), DomainError);
}

TEST(Fit, DefaultMeasurementsAreReproduced) {
    const ModeBeatModel m = default_model();
    CouplerGeometry g;
    EXPECT_NEAR(cross_coupling_fraction(g, m, 1576.0), 0.991, 1e-9);
    EXPECT_NEAR(port_fractions(g, m, 803.0).original, 0.967, 1e-9);
    EXPECT_NEAR(port_fractions(g, m, 803.0).original, 0.965, 0.003);
    g.stem_length_um = 2750.0;
    EXPECT_NEAR(cross_coupling_fraction(g, m, 1576.0), 0.787, 1e-9);
    EXPECT_NEAR(cross_coupling_fraction(g, m, 803.0), 0.0177, 1e-9);
    EXPECT_TRUE(band_ordering_holds(m, CouplerGeometry{}));
}

TEST(Fit, SyntheticRoundTrip) {
    CouplerGeometry g;
    ModeBeatModel truth;
    truth.signal = {803.0, 0.07, 2.0};
    truth.idler = {1576.0, 0.05, 3.2};
    std::vector<CouplerMeasurement> pts;
    for (double l : {2750.0, 3400.0, 4000.0}) {
        CouplerGeometry at = g;
        at.stem_length_um = l;
        pts.push_back({l, 803.0, cross_coupling_fraction(at, truth, 803.0)});
        pts.push_back({l, 1576.0, cross_coupling_fraction(at, truth, 1576.0)});
    }
    const ModeBeatModel fit = fit_beat_model(pts, g);
    EXPECT_NEAR(fit.signal.kappa0_per_um / truth.signal.kappa0_per_um, 1.0, 1e-3);
    EXPECT_NEAR(fit.signal.decay_um / truth.signal.decay_um, 1.0, 1e-3);
    EXPECT_NEAR(fit.idler.kappa0_per_um / truth.idler.kappa0_per_um, 1.0, 1e-3);
    EXPECT_NEAR(fit.idler.decay_um / truth.idler.decay_um, 1.0, 1e-3);
}

TEST(Fit, SingleStemLengthIsDegenerate) {
    std::vector<CouplerMeasurement> pts{{4000.0, 1576.0, 0.991}, {4000.0, 1576.0, 0.99},
                                        {4000.0, 803.0, 0.033}, {2750.0, 803.0, 0.0177}};
    EXPECT_THROW((void)fit_beat_model(pts, CouplerGeometry{}), FitError);
}

TEST(Fit, NeedsTwoBands) {
    std::vector<CouplerMeasurement> pts{{4000.0, 1576.0, 0.991}, {2750.0, 1576.0, 0.787}};
    EXPECT_THROW((void)fit_beat_model(pts, CouplerGeometry{}), FitError);
}

TEST(Fit, WithoutBendsUsesFallbackDecay) {
    CouplerGeometry g;
    g.with_bends = false;
    // Straight coupler: cross fraction is sin^2(kappa L) exactly.
    auto sq = [](double x) { return std::sin(x) * std::sin(x); };
    std::vector<CouplerMeasurement> pts{{4000.0, 1576.0, sq(1.4)}, {2000.0, 1576.0, sq(0.7)},
                                        {4000.0, 803.0, sq(0.16)}, {2000.0, 803.0, sq(0.08)}};
    const ModeBeatModel m = fit_beat_model(pts, g, 2.5);
    EXPECT_EQ(m.idler.decay_um, 2.5);
    EXPECT_EQ(m.signal.decay_um, 2.5);
    EXPECT_NEAR(cross_coupling_fraction(g, m, 1576.0), sq(1.4), 1e-9);
    EXPECT_NEAR(cross_coupling_fraction(g, m, 803.0), sq(0.16), 1e-9);
}

TEST(Suppression, OptimumValues) {
    const ModeBeatModel m = default_model();
    CouplerGeometry g;
    const Decibel s = suppression_signal(g, m);
    const Decibel i = suppression_idler(g, m);
    ASSERT_TRUE(s.finite());
    ASSERT_TRUE(i.finite());
    EXPECT_NEAR(s.value, -15.0, 0.5);
    EXPECT_NEAR(i.value, -20.6, 0.5);
    const auto ps = port_fractions(g, m, 803.0);
    const auto pi = port_fractions(g, m, 1576.0);
    EXPECT_NEAR(s.value, 10.0 * std::log10(ps.cross / ps.original), 1e-12);
    EXPECT_NEAR(i.value, 10.0 * std::log10(pi.original / pi.cross), 1e-12);
}

TEST(Suppression, HandArithmetic) {
    EXPECT_NEAR(Decibel::ratio(0.0087, 0.9913).value, -20.6, 0.05);
    EXPECT_EQ(Decibel::ratio(0.5, 0.5).value, 0.0);
    EXPECT_EQ(Decibel::ratio(0.3, 0.3).value, 0.0);
}

TEST(Suppression, Sentinels) {
    EXPECT_EQ(Decibel::ratio(0.0, 1.0).kind, Decibel::Kind::minus_infinity);
    EXPECT_EQ(Decibel::ratio(1.0, 0.0).kind, Decibel::Kind::plus_infinity);
    EXPECT_EQ(Decibel::ratio(0.0, 1.0).str(), "-inf");
    EXPECT_THROW((void)Decibel::ratio(0.0, 0.0), DomainError);

    // Full transfer of the idler: nothing left in the original port.
    CouplerGeometry g;
    g.with_bends = false;
    ModeBeatModel m;
    m.idler = {1576.0, 1.0, 1.0};
    m.signal = {803.0, 0.5, 1.0};
    g.stem_length_um = std::numbers::pi / m.idler.kappa(g.center_gap_um);
    const auto p = port_fractions(g, m, 1576.0);
    if (p.original == 0.0) {
        EXPECT_EQ(suppression_idler(g, m).kind, Decibel::Kind::minus_infinity);
    } else {
        EXPECT_LT(suppression_idler(g, m).value, -250.0);
    }
}

TEST(Properties, UnitarityAndPeriodicity) {
    const ModeBeatModel m = default_model();
    CouplerGeometry g;
    for (double l = 0.0; l <= 20000.0; l += 137.0) {
        g.stem_length_um = l;
        for (double lam : {803.0, 1576.0}) {
            const auto p = port_fractions(g, m, lam);
            EXPECT_EQ(p.cross + p.original, 1.0);
            const double period = 2.0 * std::numbers::pi / m.band_for(lam).kappa(g.center_gap_um);
            CouplerGeometry h = g;
            h.stem_length_um = l + period;
            EXPECT_NEAR(cross_coupling_fraction(h, m, lam), p.cross, 1e-9);
        }
    }
}

TEST(Sweep, SinglePointMatchesDirectCall) {
    const ModeBeatModel m = default_model();
    const std::vector<double> one{4000.0};
    const auto rows = sweep(CouplerGeometry{}, m, one);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].eta_idler, cross_coupling_fraction(CouplerGeometry{}, m, 1576.0));
    EXPECT_EQ(rows[0].signal_suppression.value, suppression_signal(CouplerGeometry{}, m).value);
}

TEST(Sweep, OptimumNearMeasuredStem) {
    const ModeBeatModel m = default_model();
    std::vector<double> lengths;
    for (double l = 2750.0; l <= 4250.0; l += 50.0) {
        lengths.push_back(l);
    }
    const auto rows = sweep(CouplerGeometry{}, m, lengths);
    EXPECT_NEAR(best_row(rows).stem_length_um, 4000.0, 300.0);
}
