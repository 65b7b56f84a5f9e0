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

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <utility>

#include "pdcsim/errors.hpp"

namespace pdcsim {

/// Bracketing root finder: regula falsi steps with a bisection forced every
/// third iteration so the bracket always shrinks. Stops when |f| <= f_tol or
/// the bracket is narrower than x_tol. Deterministic for a given input.
template <class F>
double find_root(F &&f, double lo, double hi, double f_tol, double x_tol = 0.0, int max_iter = 400) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) {
        return lo;
    }
    if (fhi == 0.0) {
        return hi;
    }
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw DomainError("find_root: interval does not bracket a sign change");
    }
    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double fbest = std::min(std::abs(flo), std::abs(fhi));
    for (int iter = 0; iter < max_iter; ++iter) {
        double x = hi - fhi * (hi - lo) / (fhi - flo);
        if (!(x > lo && x < hi) || iter % 3 == 2) {
            x = 0.5 * (lo + hi);
        }
        double fx = f(x);
        if (std::abs(fx) < fbest) {
            best = x;
            fbest = std::abs(fx);
        }
        if (std::abs(fx) <= f_tol) {
            return x;
        }
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if (hi - lo <= x_tol) {
            break;
        }
    }
    return best;
}

/// Linear interpolation of the abscissa where y crosses `level` between
/// (x0, y0) and (x1, y1).
inline double crossing(double x0, double y0, double x1, double y1, double level) {
    if (y1 == y0) {
        return 0.5 * (x0 + x1);
    }
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

/// Full width at half maximum of sampled y(x) with x increasing: linear
/// interpolation at the first half-maximum crossing on each side of the
/// largest sample. Empty when the samples do not drop below half maximum on
/// both sides.
inline std::optional<double> half_max_width(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) {
        return std::nullopt;
    }
    const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    const double half = 0.5 * y[peak];
    if (!(half > 0.0)) {
        return std::nullopt;
    }
    std::size_t l = peak;
    while (l > 0 && y[l - 1] >= half) {
        --l;
    }
    std::size_t r = peak;
    while (r + 1 < y.size() && y[r + 1] >= half) {
        ++r;
    }
    if (l == 0 || r + 1 == y.size()) {
        return std::nullopt;
    }
    return crossing(x[r], y[r], x[r + 1], y[r + 1], half) - crossing(x[l - 1], y[l - 1], x[l], y[l], half);
}

}  // namespace pdcsim
