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

#pragma once

#include <string>
#include <vector>

#include "pdcsim/random.hpp"

namespace pdcsim {

enum class PairLaw { thermal, poisson };

const char *law_name(PairLaw law);
PairLaw parse_law(const std::string &name);

/// Per-pulse pair-number law, tabulated up to a cutoff n_max. The table is
/// not renormalised: probabilities sum to 1 - tail_mass().
class PairNumberDistribution {
   public:
    static constexpr unsigned kMinCutoff = 8;
    static constexpr double kDefaultTail = 1e-14;

    /// n_max = 0 picks the smallest cutoff >= 8 whose tail is below
    /// kDefaultTail. An explicit cutoff must still satisfy the 1e-12 bound.
    PairNumberDistribution(PairLaw law, double mean, unsigned n_max = 0);

    PairLaw law() const { return law_; }
    double mean() const { return mean_; }
    unsigned n_max() const { return static_cast<unsigned>(pmf_.size() - 1); }
    double probability(unsigned n) const { return n < pmf_.size() ? pmf_[n] : 0.0; }
    double tail_mass() const { return tail_; }

    /// Exact probability of n = k for the untruncated law.
    static double exact_probability(PairLaw law, double mean, unsigned k);
    /// Probability of n > k for the untruncated law.
    static double exact_tail(PairLaw law, double mean, unsigned k);

    unsigned sample(RandomStream &rng) const;
    /// Draw conditioned on n >= 1. Requires mean > 0.
    unsigned sample_nonzero(RandomStream &rng) const;

   private:
    PairLaw law_;
    double mean_;
    double tail_;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

/// Linear pump-power to mean-pair-number map, mu = slope * P.
struct PumpPowerMap {
    double slope_per_uw = 0.24 / 85.14;
    double repetition_rate_hz = 1e7;

    /// Map through one calibration point (P, mu).
    static PumpPowerMap through(double power_uw, double mean_pairs, double repetition_rate_hz);
    double mean_pairs(double power_uw) const;
};

/// Ordered list of named transmission stages. Total transmission is the
/// product of the stages.
class OpticalChannel {
   public:
    struct Stage {
        std::string name;
        double transmission = 1.0;
    };

    OpticalChannel() = default;
    explicit OpticalChannel(std::vector<Stage> stages);

    OpticalChannel &add(std::string name, double transmission);
    const std::vector<Stage> &stages() const { return stages_; }
    double transmission() const;
    /// Transmission of a named stage; throws DomainError if absent.
    double stage(const std::string &name) const;

   private:
    std::vector<Stage> stages_;
};

std::vector<std::string> validate(const OpticalChannel &channel, const std::string &label);

/// Binomial survivors of n photons at the given transmission.
unsigned thin(unsigned n_photons, double transmission, RandomStream &rng);

struct PhotonTriple {
    unsigned signal = 0;
    unsigned idler1 = 0;
    unsigned idler2 = 0;
    bool operator==(const PhotonTriple &) const = default;
};

/// Signal photons to the trigger; idler photons through their channel and a
/// beam splitter sending each survivor to port 1 with `splitter_ratio`.
PhotonTriple propagate_pulse(unsigned n_pairs, const OpticalChannel &signal, const OpticalChannel &idler,
                             double splitter_ratio, RandomStream &rng);

}  // namespace pdcsim
