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

#include "pdcsim/qpm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdcsim/errors.hpp"
#include "pdcsim/numeric.hpp"

namespace pdcsim::qpm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// sin(x)/x = 1/sqrt(2)
constexpr double kSincHalfPoint = 1.3915573782515103;
constexpr double kRootTolerance = 1e-10;

double bulk_index(const SellmeierSet &s, double wavelength_nm, double temperature_c) {
    const double l = wavelength_nm * 1e-3;
    const double l2 = l * l;
    const double f = (temperature_c - s.reference_temperature_c) *
                     (temperature_c + s.reference_temperature_c + 546.32);
    const auto &a = s.a;
    const auto &b = s.b;
    const double uv_pole = a[2] + b[2] * f;
    const double n2 = a[0] + b[0] * f + (a[1] + b[1] * f) / (l2 - uv_pole * uv_pole) +
                      (a[3] + b[3] * f) / (l2 - a[4] * a[4]) - a[5] * l2;
    return std::sqrt(n2);
}

std::string format_range(const char *what, double value, const ValueRange &r, const char *unit) {
    std::ostringstream os;
    os << what << " " << value << " " << unit << " outside valid range [" << r.min << ", " << r.max << "] "
       << unit;
    return os.str();
}

double length_um(const QpmConfig &config) { return config.interaction_length_mm * 1e3; }

// Half-maximum half-width of the sinc^2 response expressed as |dK|.
double half_max_mismatch(const QpmConfig &config) { return 2.0 * kSincHalfPoint / length_um(config); }

double signal_at_mismatch(const DispersionModel &model, const QpmConfig &config, double center_nm,
                          double target, double direction) {
    auto g = [&](double l) { return std::abs(mismatch(model, config, l)) - target; };
    double step = 0.01;
    double prev = center_nm;
    double x = center_nm + direction * step;
    while (g(x) < 0.0) {
        prev = x;
        step *= 2.0;
        x = center_nm + direction * step;
        if (step > 200.0) {
            throw DomainError("spectral width search ran past 200 nm");
        }
    }
    double lo = std::min(prev, x);
    double hi = std::max(prev, x);
    return find_root(g, lo, hi, 1e-14 * target, 1e-12);
}

double analytic_fwhm(const DispersionModel &model, const QpmConfig &config, double center_nm) {
    const double dk = half_max_mismatch(config);
    double lo = signal_at_mismatch(model, config, center_nm, dk, -1.0);
    double hi = signal_at_mismatch(model, config, center_nm, dk, +1.0);
    return hi - lo;
}

}  // namespace

const char *band_name(Band band) {
    switch (band) {
        case Band::pump:
            return "pump";
        case Band::signal:
            return "signal";
        case Band::idler:
            return "idler";
    }
    return "?";
}

SellmeierSet SellmeierSet::congruent_lithium_niobate() {
    SellmeierSet s;
    s.a = {5.35583, 0.100473, 0.20692, 100.0, 11.34927, 1.5334e-2};
    s.b = {4.629e-7, 3.862e-8, -0.89e-8, 2.657e-5};
    s.reference_temperature_c = 24.5;
    return s;
}

NoPhaseMatchError::NoPhaseMatchError(double min_mismatch, double max_mismatch)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "no quasi-phase-matched signal in search window; mismatch spans [" << min_mismatch << ", "
             << max_mismatch << "] rad/um";
          return os.str();
      }()),
      min_(min_mismatch),
      max_(max_mismatch) {}

std::vector<std::string> validate(const DispersionModel &model) {
    std::vector<std::string> out;
    if (!(model.wavelength_nm.min > 0.0 && model.wavelength_nm.max > model.wavelength_nm.min)) {
        out.push_back("dispersion.valid_wavelength_nm must be an increasing positive interval");
        return out;
    }
    if (!(model.temperature_c.max >= model.temperature_c.min)) {
        out.push_back("dispersion.valid_temperature_c must be an increasing interval");
        return out;
    }
    for (double t : {model.temperature_c.min, 0.5 * (model.temperature_c.min + model.temperature_c.max),
                     model.temperature_c.max}) {
        for (int b = 0; b < 3; ++b) {
            double prev = std::numeric_limits<double>::infinity();
            const int steps = 200;
            for (int i = 0; i <= steps; ++i) {
                double l = model.wavelength_nm.min +
                           (model.wavelength_nm.max - model.wavelength_nm.min) * i / static_cast<double>(steps);
                double n = bulk_index(model.sellmeier, l, t) + model.offsets[b];
                if (!std::isfinite(n) || n <= 1.5 || n >= 2.5) {
                    std::ostringstream os;
                    os << "dispersion: " << band_name(static_cast<Band>(b)) << " index " << n << " at " << l
                       << " nm, " << t << " degC is outside (1.5, 2.5)";
                    out.push_back(os.str());
                    return out;
                }
                if (n >= prev) {
                    std::ostringstream os;
                    os << "dispersion: index not decreasing in wavelength near " << l << " nm, " << t << " degC";
                    out.push_back(os.str());
                    return out;
                }
                prev = n;
            }
        }
    }
    return out;
}

std::vector<std::string> validate(const QpmConfig &config, const DispersionModel &model) {
    std::vector<std::string> out;
    if (!(config.pump_wavelength_nm > 0.0)) {
        out.push_back("qpm.pump_wavelength_nm must be > 0");
    } else if (!model.wavelength_nm.contains(config.pump_wavelength_nm)) {
        out.push_back(format_range("qpm.pump_wavelength_nm", config.pump_wavelength_nm, model.wavelength_nm, "nm"));
    }
    if (!(config.poling_period_um > 0.0)) {
        out.push_back("qpm.poling_period_um must be > 0");
    }
    if (!(config.interaction_length_mm > 0.0)) {
        out.push_back("qpm.interaction_length_mm must be > 0");
    }
    if (!model.temperature_c.contains(config.temperature_c)) {
        out.push_back(format_range("qpm.temperature_c", config.temperature_c, model.temperature_c, "degC"));
    }
    return out;
}

double refractive_index(const DispersionModel &model, double wavelength_nm, double temperature_c, Band band) {
    if (!(wavelength_nm >= model.wavelength_nm.min)) {
        throw DomainError(format_range("wavelength", wavelength_nm, model.wavelength_nm, "nm") +
                          " (below minimum)");
    }
    if (!(wavelength_nm <= model.wavelength_nm.max)) {
        throw DomainError(format_range("wavelength", wavelength_nm, model.wavelength_nm, "nm") +
                          " (above maximum)");
    }
    if (!(temperature_c >= model.temperature_c.min)) {
        throw DomainError(format_range("temperature", temperature_c, model.temperature_c, "degC") +
                          " (below minimum)");
    }
    if (!(temperature_c <= model.temperature_c.max)) {
        throw DomainError(format_range("temperature", temperature_c, model.temperature_c, "degC") +
                          " (above maximum)");
    }
    return bulk_index(model.sellmeier, wavelength_nm, temperature_c) + model.offset(band);
}

double idler_wavelength_nm(double pump_nm, double signal_nm) { return 1.0 / (1.0 / pump_nm - 1.0 / signal_nm); }

double wave_number(const DispersionModel &model, double wavelength_nm, double temperature_c, Band band) {
    return kTwoPi * refractive_index(model, wavelength_nm, temperature_c, band) / (wavelength_nm * 1e-3);
}

double mismatch(const DispersionModel &model, const QpmConfig &config, double signal_nm) {
    if (!(signal_nm > config.pump_wavelength_nm)) {
        throw DomainError("signal wavelength must exceed the pump wavelength");
    }
    if (!(config.poling_period_um > 0.0)) {
        throw DomainError("poling period must be positive");
    }
    const double idler_nm = idler_wavelength_nm(config.pump_wavelength_nm, signal_nm);
    if (!model.wavelength_nm.contains(idler_nm)) {
        throw DomainError(format_range("derived idler wavelength", idler_nm, model.wavelength_nm, "nm"));
    }
    const double t = config.temperature_c;
    const double dk = wave_number(model, config.pump_wavelength_nm, t, Band::pump) -
                      wave_number(model, signal_nm, t, Band::signal) - wave_number(model, idler_nm, t, Band::idler);
    const double grating = std::isinf(config.poling_period_um) ? 0.0 : kTwoPi / config.poling_period_um;
    return dk - grating;
}

PhaseMatchSolution solve_signal_idler(const DispersionModel &model, const QpmConfig &config, SearchWindow window) {
    if (auto errs = validate(config, model); !errs.empty()) {
        throw DomainError(errs.front());
    }
    const double step = 2.0;
    double lo = std::max(window.lo_nm, config.pump_wavelength_nm * (1.0 + 1e-9));
    // Signal is the higher-frequency daughter: stay strictly below degeneracy.
    double hi = std::min(window.hi_nm, 2.0 * config.pump_wavelength_nm * (1.0 - 1e-9));
    double min_m = std::numeric_limits<double>::infinity();
    double max_m = -std::numeric_limits<double>::infinity();
    std::optional<std::pair<double, double>> prev;
    std::optional<std::pair<double, double>> bracket;
    for (double l = lo; l <= hi + 1e-9 && !bracket; l += step) {
        double x = std::min(l, hi);
        double m;
        try {
            m = mismatch(model, config, x);
        } catch (const DomainError &) {
            prev.reset();
            continue;
        }
        min_m = std::min(min_m, m);
        max_m = std::max(max_m, m);
        if (m == 0.0) {
            bracket = {x, x};
        } else if (prev && std::signbit(prev->second) != std::signbit(m)) {
            bracket = {prev->first, x};
        }
        prev = {x, m};
    }
    if (!bracket) {
        throw NoPhaseMatchError(min_m, max_m);
    }
    auto f = [&](double l) { return mismatch(model, config, l); };
    double signal = bracket->first == bracket->second ? bracket->first
                                                      : find_root(f, bracket->first, bracket->second, kRootTolerance);
    PhaseMatchSolution sol;
    sol.signal_nm = signal;
    sol.idler_nm = idler_wavelength_nm(config.pump_wavelength_nm, signal);
    sol.residual_mismatch = f(signal);
    sol.spectral_fwhm_nm = analytic_fwhm(model, config, signal);
    return sol;
}

std::vector<SpectrumSample> spectrum(const DispersionModel &model, const QpmConfig &config,
                                     std::span<const double> signal_grid_nm) {
    if (signal_grid_nm.size() < 3) {
        throw DomainError("spectrum grid needs at least three points");
    }
    if (!std::is_sorted(signal_grid_nm.begin(), signal_grid_nm.end())) {
        throw DomainError("spectrum grid must be increasing");
    }
    const PhaseMatchSolution sol = solve_signal_idler(model, config);
    if (!(signal_grid_nm.front() < sol.signal_nm && signal_grid_nm.back() > sol.signal_nm)) {
        std::ostringstream os;
        os << "spectrum grid [" << signal_grid_nm.front() << ", " << signal_grid_nm.back()
           << "] nm does not cover the phase-matched signal at " << sol.signal_nm << " nm";
        throw DomainError(os.str());
    }
    const double half_length = 0.5 * length_um(config);
    std::vector<SpectrumSample> out;
    out.reserve(signal_grid_nm.size());
    for (double l : signal_grid_nm) {
        const double x = mismatch(model, config, l) * half_length;
        const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
        out.push_back({l, sinc * sinc});
    }
    return out;
}

double sampled_fwhm(std::span<const SpectrumSample> samples) {
    if (samples.size() < 3) {
        throw DomainError("need at least three spectrum samples");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &s : samples) {
        x.push_back(s.signal_nm);
        y.push_back(s.intensity);
    }
    if (auto w = half_max_width(x, y)) {
        return *w;
    }
    throw DomainError("spectrum does not fall below half maximum on both sides of the peak");
}

std::vector<TuningPoint> tuning_curve(const DispersionModel &model, SweepParameter parameter,
                                      std::span<const double> values, const QpmConfig &fixed, SearchWindow window) {
    std::vector<TuningPoint> out;
    out.reserve(values.size());
    for (double v : values) {
        QpmConfig c = fixed;
        if (parameter == SweepParameter::poling_period) {
            c.poling_period_um = v;
        } else {
            c.temperature_c = v;
        }
        TuningPoint p;
        p.sweep_value = v;
        try {
            p.solution = solve_signal_idler(model, c, window);
        } catch (const std::exception &e) {
            p.error = e.what();
        }
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

// The pump offset enters the mismatch linearly through k_p.
DispersionModel recenter(DispersionModel model, const QpmConfig &config, double signal_nm) {
    const double m = mismatch(model, config, signal_nm);
    model.offsets[0] -= m * config.pump_wavelength_nm * 1e-3 / kTwoPi;
    return model;
}

}  // namespace

DispersionModel calibrate_offsets(const DispersionModel &model, const QpmConfig &config,
                                  const OffsetTargets &targets) {
    if (auto errs = validate(config, model); !errs.empty()) {
        throw DomainError(errs.front());
    }
    DispersionModel centered = recenter(model, config, targets.signal_nm);
    if (!targets.fwhm_nm) {
        return centered;
    }
    const double want = *targets.fwhm_nm;
    if (!(want > 0.0)) {
        throw DomainError("target FWHM must be positive");
    }
    auto width_error = [&](double signal_offset) {
        DispersionModel m = model;
        m.offsets[1] = signal_offset;
        m = recenter(m, config, targets.signal_nm);
        return analytic_fwhm(m, config, targets.signal_nm) - want;
    };
    // Walk the signal offset from its current value in the direction that
    // moves the width toward the target until the error changes sign.
    const double start = model.offsets[1];
    const double e0 = width_error(start);
    if (e0 == 0.0) {
        return centered;
    }
    const double probe = 1e-4;
    const double slope = width_error(start - probe) - e0;  // width change when lowering the offset
    const double direction = (slope > 0.0) == (e0 < 0.0) ? -1.0 : 1.0;
    double a = start;
    double b = start;
    double step = 1e-3;
    for (;;) {
        b = a + direction * step;
        if (std::signbit(width_error(b)) != std::signbit(e0)) {
            break;
        }
        a = b;
        if (std::abs(b - start) > 0.3) {
            throw DomainError("cannot reach the requested spectral width with a signal index offset below 0.3");
        }
    }
    const double signal_offset = find_root(width_error, std::min(a, b), std::max(a, b), 1e-9 * want, 1e-15);
    DispersionModel out = model;
    out.offsets[1] = signal_offset;
    return recenter(out, config, targets.signal_nm);
}

}  // namespace pdcsim::qpm
