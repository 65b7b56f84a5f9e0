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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdcsim/errors.hpp"

namespace pdcsim {

const char *law_name(PairLaw law) { return law == PairLaw::thermal ? "thermal" : "poisson"; }

PairLaw parse_law(const std::string &name) {
    if (name == "thermal") {
        return PairLaw::thermal;
    }
    if (name == "poisson") {
        return PairLaw::poisson;
    }
    throw DomainError("unknown pair-number law '" + name + "' (expected thermal or poisson)");
}

double PairNumberDistribution::exact_probability(PairLaw law, double mean, unsigned k) {
    if (mean == 0.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    if (law == PairLaw::thermal) {
        return std::exp(k * std::log(mean / (1.0 + mean)) - std::log1p(mean));
    }
    return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

double PairNumberDistribution::exact_tail(PairLaw law, double mean, unsigned k) {
    if (mean == 0.0) {
        return 0.0;
    }
    if (law == PairLaw::thermal) {
        return std::pow(mean / (1.0 + mean), k + 1.0);
    }
    // Sum the tail directly; terms decay geometrically past the mode.
    double sum = 0.0;
    for (unsigned n = k + 1;; ++n) {
        double p = exact_probability(law, mean, n);
        sum += p;
        if (n > mean && p < 1e-18 * std::max(sum, 1e-300)) {
            break;
        }
        if (n > k + 100000) {
            break;
        }
    }
    return sum;
}

PairNumberDistribution::PairNumberDistribution(PairLaw law, double mean, unsigned n_max)
    : law_(law), mean_(mean), tail_(0.0) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw DomainError("mean pair number must be finite and >= 0");
    }
    unsigned cutoff = n_max;
    if (cutoff == 0) {
        cutoff = kMinCutoff;
        while (exact_tail(law, mean, cutoff) >= kDefaultTail) {
            cutoff += cutoff < 64 ? 1 : cutoff / 8;
        }
    } else if (cutoff < kMinCutoff) {
        throw DomainError("pair-number cutoff must be >= 8");
    }
    tail_ = exact_tail(law, mean, cutoff);
    if (tail_ >= 1e-12) {
        std::ostringstream os;
        os << "pair-number cutoff " << cutoff << " leaves tail mass " << tail_ << " >= 1e-12 at mean " << mean;
        throw DomainError(os.str());
    }
    pmf_.resize(cutoff + 1);
    cdf_.resize(cutoff + 1);
    double acc = 0.0;
    for (unsigned n = 0; n <= cutoff; ++n) {
        pmf_[n] = exact_probability(law, mean, n);
        acc += pmf_[n];
        cdf_[n] = acc;
    }
}

unsigned PairNumberDistribution::sample(RandomStream &rng) const {
    const double u = rng.uniform();
    if (u < cdf_[0]) {
        return 0;
    }
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) {
        return n_max();
    }
    return static_cast<unsigned>(it - cdf_.begin());
}

unsigned PairNumberDistribution::sample_nonzero(RandomStream &rng) const {
    if (!(mean_ > 0.0)) {
        throw ContractError("sample_nonzero needs a positive mean");
    }
    // Invert the conditional law on (p0, total]; u is drawn above p0.
    const double p0 = cdf_[0];
    const double u = p0 + (cdf_.back() - p0) * rng.uniform();
    auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), u);
    if (it == cdf_.end()) {
        return n_max();
    }
    return static_cast<unsigned>(it - cdf_.begin());
}

PumpPowerMap PumpPowerMap::through(double power_uw, double mean_pairs, double repetition_rate_hz) {
    if (!(power_uw > 0.0) || !(mean_pairs > 0.0)) {
        throw DomainError("pump calibration point needs positive power and mean pair number");
    }
    return {mean_pairs / power_uw, repetition_rate_hz};
}

double PumpPowerMap::mean_pairs(double power_uw) const {
    if (!(power_uw >= 0.0)) {
        throw DomainError("pump power must be >= 0");
    }
    return slope_per_uw * power_uw;
}

OpticalChannel::OpticalChannel(std::vector<Stage> stages) : stages_(std::move(stages)) {
    for (const auto &s : stages_) {
        if (!(s.transmission >= 0.0 && s.transmission <= 1.0)) {
            throw DomainError("stage '" + s.name + "' transmission outside [0, 1]");
        }
    }
}

OpticalChannel &OpticalChannel::add(std::string name, double transmission) {
    if (!(transmission >= 0.0 && transmission <= 1.0)) {
        throw DomainError("stage '" + name + "' transmission outside [0, 1]");
    }
    stages_.push_back({std::move(name), transmission});
    return *this;
}

double OpticalChannel::transmission() const {
    double t = 1.0;
    for (const auto &s : stages_) {
        t *= s.transmission;
    }
    return t;
}

double OpticalChannel::stage(const std::string &name) const {
    for (const auto &s : stages_) {
        if (s.name == name) {
            return s.transmission;
        }
    }
    throw DomainError("no channel stage named '" + name + "'");
}

std::vector<std::string> validate(const OpticalChannel &channel, const std::string &label) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < channel.stages().size(); ++i) {
        const auto &s = channel.stages()[i];
        if (!(s.transmission >= 0.0 && s.transmission <= 1.0)) {
            out.push_back(label + "[" + std::to_string(i) + "] (" + s.name + "): transmission must be in [0, 1]");
        }
    }
    return out;
}

unsigned thin(unsigned n_photons, double transmission, RandomStream &rng) {
    if (!(transmission >= 0.0 && transmission <= 1.0)) {
        throw DomainError("transmission outside [0, 1]");
    }
    return rng.binomial(n_photons, transmission);
}

PhotonTriple propagate_pulse(unsigned n_pairs, const OpticalChannel &signal, const OpticalChannel &idler,
                             double splitter_ratio, RandomStream &rng) {
    if (!(splitter_ratio >= 0.0 && splitter_ratio <= 1.0)) {
        throw DomainError("splitter ratio outside [0, 1]");
    }
    PhotonTriple out;
    if (n_pairs == 0) {
        return out;
    }
    out.signal = thin(n_pairs, signal.transmission(), rng);
    const unsigned idlers = thin(n_pairs, idler.transmission(), rng);
    out.idler1 = rng.binomial(idlers, splitter_ratio);
    out.idler2 = idlers - out.idler1;
    return out;
}

}  // namespace pdcsim
