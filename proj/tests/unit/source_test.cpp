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

#include "pdcsim/source.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "pdcsim/errors.hpp"
#include "pdcsim/random.hpp"

using namespace pdcsim;

TEST(PairDistribution, ClosedForms) {
    const PairNumberDistribution th(PairLaw::thermal, 0.24);
    const PairNumberDistribution po(PairLaw::poisson, 0.24);
    for (unsigned n = 0; n < 6; ++n) {
        EXPECT_NEAR(th.probability(n), std::pow(0.24, n) / std::pow(1.24, n + 1), 1e-16);
        EXPECT_NEAR(po.probability(n), std::exp(-0.24) * std::pow(0.24, n) / std::tgamma(n + 1.0), 1e-16);
    }
    for (const auto *d : {&th, &po}) {
        EXPECT_GE(d->n_max(), PairNumberDistribution::kMinCutoff);
        EXPECT_LT(d->tail_mass(), 1e-12);
        double sum = 0.0;
        for (unsigned n = 0; n <= d->n_max(); ++n) {
            sum += d->probability(n);
        }
        EXPECT_NEAR(sum, 1.0 - d->tail_mass(), 1e-15);
    }
}

TEST(PairDistribution, ContractErrors) {
    EXPECT_THROW(PairNumberDistribution(PairLaw::thermal, -0.1), DomainError);
    EXPECT_THROW(PairNumberDistribution(PairLaw::thermal, 0.1, 4), DomainError);
    // A cutoff of 8 cannot hold a thermal tail at mu = 1 below 1e-12.
    EXPECT_THROW(PairNumberDistribution(PairLaw::thermal, 1.0, 8), DomainError);
    EXPECT_EQ(parse_law("poisson"), PairLaw::poisson);
    EXPECT_THROW((void)parse_law("gaussian"), DomainError);
}

TEST(PairDistribution, ZeroMeanAlwaysZero) {
    const PairNumberDistribution d(PairLaw::thermal, 0.0);
    RandomStream rng(7, {1});
    for (int i = 0; i < 10000; ++i) {
        ASSERT_EQ(d.sample(rng), 0u);
    }
}

TEST(PairDistribution, ThermalVacuumFraction) {
    const PairNumberDistribution d(PairLaw::thermal, 0.24);
    RandomStream rng(11, {2});
    const int n = 1'000'000;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
        zeros += d.sample(rng) == 0 ? 1 : 0;
    }
    const double p = 1.0 / 1.24;
    EXPECT_NEAR(static_cast<double>(zeros) / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST(PairDistribution, PoissonMean) {
    const PairNumberDistribution d(PairLaw::poisson, 0.24);
    RandomStream rng(11, {3});
    const int n = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += d.sample(rng);
    }
    EXPECT_NEAR(sum / n, 0.24, 3.0 * std::sqrt(0.24 / n));
}

TEST(PairDistribution, ChiSquareBothLaws) {
    for (PairLaw law : {PairLaw::thermal, PairLaw::poisson}) {
        for (double mu : {0.001, 0.05, 0.24}) {
            const PairNumberDistribution d(law, mu);
            RandomStream rng(5, {static_cast<std::uint64_t>(law), static_cast<std::uint64_t>(mu * 1000)});
            const int n = 1'000'000;
            std::vector<double> counts(d.n_max() + 1, 0.0);
            for (int i = 0; i < n; ++i) {
                counts[d.sample(rng)] += 1.0;
            }
            // Pool bins with expectation below 5 into the last kept bin.
            double chi2 = 0.0;
            int dof = -1;
            double pooled_obs = 0.0;
            double pooled_exp = 0.0;
            for (unsigned k = 0; k <= d.n_max(); ++k) {
                pooled_obs += counts[k];
                pooled_exp += d.probability(k) * n;
                if (pooled_exp >= 5.0 && (k + 1 > d.n_max() || d.probability(k + 1) * n >= 5.0)) {
                    chi2 += std::pow(pooled_obs - pooled_exp, 2) / pooled_exp;
                    ++dof;
                    pooled_obs = pooled_exp = 0.0;
                }
            }
            if (pooled_exp > 0.0) {
                chi2 += std::pow(pooled_obs - pooled_exp, 2) / pooled_exp;
                ++dof;
            }
            dof = std::max(dof, 1);
            // Mean dof, sd sqrt(2 dof): 3 sigma.
            EXPECT_LT(chi2, dof + 3.0 * std::sqrt(2.0 * dof) + 3.0) << law_name(law) << " mu=" << mu;
        }
    }
}

TEST(PairDistribution, NonzeroSamplesAreNonzero) {
    const PairNumberDistribution d(PairLaw::thermal, 0.01);
    RandomStream rng(3, {4});
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const unsigned k = d.sample_nonzero(rng);
        ASSERT_GE(k, 1u);
        sum += k;
    }
    // E[n | n >= 1] = 1 + mu for the thermal law.
    EXPECT_NEAR(sum / n, 1.01, 5.0 * std::sqrt(0.0102 / n));
}

TEST(PumpMap, LinearThroughCalibrationPoint) {
    const PumpPowerMap m;
    EXPECT_NEAR(m.mean_pairs(85.14), 0.24, 1e-15);
    EXPECT_EQ(m.mean_pairs(0.0), 0.0);
    EXPECT_NEAR(m.mean_pairs(10000.0), 28.188865398167724, 1e-9);
    EXPECT_THROW((void)m.mean_pairs(-1.0), DomainError);
    const PumpPowerMap t = PumpPowerMap::through(85.14, 0.24, 1e7);
    EXPECT_DOUBLE_EQ(t.slope_per_uw, m.slope_per_uw);
}

TEST(Channel, ProductAndStageLookup) {
    OpticalChannel c;
    c.add("a", 0.97).add("b", 0.78).add("c", 0.995);
    EXPECT_NEAR(c.transmission(), 0.97 * 0.78 * 0.995, 1e-15);
    EXPECT_EQ(c.stage("b"), 0.78);
    EXPECT_THROW((void)c.stage("zzz"), DomainError);
    OpticalChannel r;
    r.add("c", 0.995).add("a", 0.97).add("b", 0.78);
    EXPECT_NEAR(r.transmission(), c.transmission(), 1e-15);
    OpticalChannel bad;
    EXPECT_THROW(bad.add("x", 1.2), DomainError);
}

TEST(Channel, DefaultIdlerChainKlyshkoBound) {
    OpticalChannel idler;
    idler.add("waveguide_fiber", 0.663).add("wdm_idler", 0.991);
    EXPECT_NEAR(idler.transmission(), 0.657, 5e-4);
    EXPECT_NEAR(idler.transmission() * 0.23, 0.151, 5e-4);
}

TEST(Thin, EdgeCasesAndMean) {
    RandomStream rng(9, {5});
    EXPECT_EQ(thin(17, 1.0, rng), 17u);
    EXPECT_EQ(thin(17, 0.0, rng), 0u);
    const int n = 1'000'000;
    double survivors = 0.0;
    for (int i = 0; i < n; ++i) {
        const unsigned s = thin(1, 0.663, rng);
        ASSERT_LE(s, 1u);
        survivors += s;
    }
    EXPECT_NEAR(survivors / n, 0.663, 3.0 * std::sqrt(0.663 * 0.337 / n));
}

TEST(Propagate, VacuumAndBookkeeping) {
    RandomStream rng(13, {6});
    const OpticalChannel perfect;
    EXPECT_EQ(propagate_pulse(0, perfect, perfect, 0.5, rng), (PhotonTriple{0, 0, 0}));
    const int n = 100000;
    int first = 0;
    for (int i = 0; i < n; ++i) {
        const PhotonTriple t = propagate_pulse(1, perfect, perfect, 0.5, rng);
        ASSERT_EQ(t.signal, 1u);
        ASSERT_EQ(t.idler1 + t.idler2, 1u);
        first += static_cast<int>(t.idler1);
    }
    EXPECT_NEAR(static_cast<double>(first) / n, 0.5, 3.0 * std::sqrt(0.25 / n));
}

TEST(Propagate, SignalSurvivalAndConservation) {
    RandomStream rng(17, {7});
    OpticalChannel half;
    half.add("x", 0.5);
    OpticalChannel idl;
    idl.add("y", 0.7);
    const int n = 1'000'000;
    double sig = 0.0;
    for (int i = 0; i < n; ++i) {
        const PhotonTriple t = propagate_pulse(1, half, idl, 0.3, rng);
        sig += t.signal;
    }
    EXPECT_NEAR(sig / n, 0.5, 3.0 * std::sqrt(0.25 / n));
    for (unsigned pairs = 0; pairs < 20; ++pairs) {
        const PhotonTriple t = propagate_pulse(pairs, half, idl, 0.3, rng);
        EXPECT_LE(t.signal, pairs);
        EXPECT_LE(t.idler1 + t.idler2, pairs);
    }
}
