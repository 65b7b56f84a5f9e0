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

#include "pdcsim/random.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t master_seed, std::span<const std::uint64_t> tags) {
    std::vector<std::uint32_t> words;
    words.reserve(2 * (tags.size() + 1));
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(master_seed);
    for (auto t : tags) {
        push(t);
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> tags)
    : engine_(seeded_engine(master_seed, std::span<const std::uint64_t>(tags.begin(), tags.size()))) {}

RandomStream::RandomStream(std::uint64_t master_seed, std::span<const std::uint64_t> tags)
    : engine_(seeded_engine(master_seed, tags)) {}

std::uint64_t RandomStream::geometric(double log_failure) {
    if (!(log_failure < 0.0)) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    double k = std::floor(std::log(uniform_positive()) / log_failure);
    if (k >= 1.8e19) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(k);
}

unsigned RandomStream::binomial(unsigned n, double p) {
    if (p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return n;
    }
    unsigned k = 0;
    for (unsigned i = 0; i < n; ++i) {
        k += uniform() < p ? 1u : 0u;
    }
    return k;
}

unsigned RandomStream::poisson(double mean) {
    if (mean <= 0.0) {
        return 0;
    }
    // Inversion; means here stay far below the underflow regime of exp(-mean).
    double u = uniform();
    double pk = std::exp(-mean);
    double cdf = pk;
    unsigned k = 0;
    while (u >= cdf && k < 100000) {
        ++k;
        pk *= mean / k;
        cdf += pk;
        if (pk == 0.0) {
            break;
        }
    }
    return k;
}

}  // namespace pdcsim
