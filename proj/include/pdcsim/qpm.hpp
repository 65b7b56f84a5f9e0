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

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdcsim::qpm {

enum class Band { pump = 0, signal = 1, idler = 2 };

const char *band_name(Band band);

/// Temperature-dependent Sellmeier set for the extraordinary index,
///   n^2 = a1 + b1 f + (a2 + b2 f) / (l^2 - (a3 + b3 f)^2)
///        + (a4 + b4 f) / (l^2 - a5^2) - a6 l^2,
///   f = (T - t_ref)(T + t_ref + 2 * 273.16),  l in um, T in degC.
struct SellmeierSet {
    std::array<double, 6> a{};
    std::array<double, 4> b{};
    double reference_temperature_c = 24.5;

    /// Published coefficients for congruent lithium niobate (Jundt, 1997).
    static SellmeierSet congruent_lithium_niobate();
};

struct ValueRange {
    double min = 0.0;
    double max = 0.0;
    bool contains(double v) const { return v >= min && v <= max; }
};

/// Bulk Sellmeier dispersion plus constant per-band effective-index offsets
/// standing in for the guided-mode correction.
struct DispersionModel {
    SellmeierSet sellmeier = SellmeierSet::congruent_lithium_niobate();
    std::array<double, 3> offsets{};  // pump, signal, idler
    ValueRange wavelength_nm{400.0, 5000.0};
    ValueRange temperature_c{20.0, 250.0};

    double offset(Band band) const { return offsets[static_cast<int>(band)]; }
};

/// Checks the index stays finite, inside (1.5, 2.5) and normally dispersive
/// over the validity box. Returns one message per violation.
std::vector<std::string> validate(const DispersionModel &model);

struct QpmConfig {
    double pump_wavelength_nm = 532.0;
    double poling_period_um = 6.80;
    double temperature_c = 185.0;
    double interaction_length_mm = 30.0;
};

std::vector<std::string> validate(const QpmConfig &config, const DispersionModel &model);

struct PhaseMatchSolution {
    double signal_nm = 0.0;
    double idler_nm = 0.0;
    double residual_mismatch = 0.0;  // rad/um
    double spectral_fwhm_nm = 0.0;
};

/// Signal search window for the phase-matching root, in nm.
struct SearchWindow {
    double lo_nm = 600.0;
    double hi_nm = 1060.0;
};

/// Thrown when no sign change of the mismatch exists in the search window.
class NoPhaseMatchError : public std::runtime_error {
   public:
    NoPhaseMatchError(double min_mismatch, double max_mismatch);
    double min_mismatch() const { return min_; }
    double max_mismatch() const { return max_; }

   private:
    double min_;
    double max_;
};

/// n_eff = n_bulk(lambda, T) + offset(band). Throws DomainError out of range.
double refractive_index(const DispersionModel &model, double wavelength_nm, double temperature_c, Band band);

/// Vacuum-wavelength energy conservation, 1/l_i = 1/l_p - 1/l_s.
double idler_wavelength_nm(double pump_nm, double signal_nm);

/// Wave number 2 pi n_eff / lambda in rad/um.
double wave_number(const DispersionModel &model, double wavelength_nm, double temperature_c, Band band);

/// Quasi-phase-matching residual k_p - k_s - k_i - 2 pi / period in rad/um.
/// An infinite poling period gives the bare dispersion mismatch.
double mismatch(const DispersionModel &model, const QpmConfig &config, double signal_nm);

PhaseMatchSolution solve_signal_idler(const DispersionModel &model, const QpmConfig &config,
                                      SearchWindow window = {});

struct SpectrumSample {
    double signal_nm;
    double intensity;
};

/// Normalized sinc^2(dK L / 2) phase-matching spectrum on the given grid.
/// The grid must be increasing and must straddle the phase-matched signal.
std::vector<SpectrumSample> spectrum(const DispersionModel &model, const QpmConfig &config,
                                     std::span<const double> signal_grid_nm);

/// Full width at half maximum from samples, linear interpolation at the
/// half-maximum crossings on each side of the peak.
double sampled_fwhm(std::span<const SpectrumSample> samples);

enum class SweepParameter { poling_period, temperature };

struct TuningPoint {
    double sweep_value = 0.0;
    std::optional<PhaseMatchSolution> solution;
    std::string error;  // set when the solver failed at this point
};

/// One solver call per sweep value; failures are recorded per point.
std::vector<TuningPoint> tuning_curve(const DispersionModel &model, SweepParameter parameter,
                                      std::span<const double> values, const QpmConfig &fixed,
                                      SearchWindow window = {});

struct OffsetTargets {
    double signal_nm = 803.0;
    std::optional<double> fwhm_nm;  // matched at config.interaction_length_mm
};

/// Returns `model` with its offsets recalibrated so that `config` phase
/// matches at targets.signal_nm. The pump offset carries the centre
/// wavelength; when a bandwidth target is given the signal offset is also
/// adjusted (it moves the signal/idler group-index mismatch). The idler
/// offset is left untouched.
DispersionModel calibrate_offsets(const DispersionModel &model, const QpmConfig &config,
                                  const OffsetTargets &targets);

}  // namespace pdcsim::qpm
