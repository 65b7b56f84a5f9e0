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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace pdcsim {

/// Seeded random stream. Substreams are derived from a master seed plus a
/// list of integer tags (sweep point, repeat, batch, ...) through
/// std::seed_seq, so a given tag path always yields the same sequence.
class RandomStream {
   public:
    RandomStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> tags);
    RandomStream(std::uint64_t master_seed, std::span<const std::uint64_t> tags);

    std::uint64_t raw() { return engine_(); }

    /// Uniform on [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_positive() { return 1.0 - uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Number of failures before the first success of a Bernoulli sequence.
    /// `log_failure` is log(1 - p_success) and must be negative.
    std::uint64_t geometric(double log_failure);

    /// Binomial(n, p) by direct summation; n is small in photon counting.
    unsigned binomial(unsigned n, double p);

    /// Poisson(mean) by inversion.
    unsigned poisson(double mean);

   private:
    std::mt19937_64 engine_;
};

}  // namespace pdcsim
