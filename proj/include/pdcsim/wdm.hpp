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

#include <span>
#include <string>
#include <vector>

namespace pdcsim::wdm {

/// Dual-channel S-bend coupler. The structure runs input bend -> stem ->
/// exit bend; each bend is a raised cosine taking the centre-to-centre gap
/// from `port_gap_um` down to `center_gap_um` over `bend_length_um`.
struct CouplerGeometry {
    double stem_length_um = 4000.0;
    double center_gap_um = 13.0;
    double port_gap_um = 165.0;
    double bend_length_um = 5000.0;
    bool with_bends = true;

    double total_length_um() const;
    /// Gap at longitudinal position z in [0, total_length_um()].
    double gap_at(double z_um) const;
};

std::vector<std::string> validate(const CouplerGeometry &geom);

/// Supermode beat constant for one band, kappa(d) = kappa0 exp(-d / decay).
struct BandCoupling {
    double wavelength_nm = 0.0;
    double kappa0_per_um = 0.0;
    double decay_um = 1.0;

    double kappa(double gap_um) const;
};

struct ModeBeatModel {
    BandCoupling signal;
    BandCoupling idler;
    /// A wavelength belongs to a band when within this distance of its centre.
    double band_tolerance_nm = 25.0;

    const BandCoupling &band_for(double wavelength_nm) const;
};

/// Extra stem length equivalent to both bends:
///   L_b = integral over the bends of exp(-(d(z) - d0) / decay) dz.
/// Zero without bends; tends to 2 * bend_length as decay grows.
double bend_equivalent_length(const CouplerGeometry &geom, double decay_um);

/// Accumulated supermode phase difference over the whole structure, rad.
double phase_difference(const CouplerGeometry &geom, const ModeBeatModel &model, double wavelength_nm);

/// Fraction of power leaving the cross port, sin^2(dphi / 2).
double cross_coupling_fraction(const CouplerGeometry &geom, const ModeBeatModel &model, double wavelength_nm);

struct PortFractions {
    double cross = 0.0;
    double original = 1.0;
};

PortFractions port_fractions(const CouplerGeometry &geom, const ModeBeatModel &model, double wavelength_nm);

/// Power ratio in decibels. A zero numerator or denominator yields a typed
/// infinite sentinel instead of a floating-point infinity.
struct Decibel {
    enum class Kind { finite, minus_infinity, plus_infinity };
    Kind kind = Kind::finite;
    double value = 0.0;

    static Decibel ratio(double numerator, double denominator);
    bool finite() const { return kind == Kind::finite; }
    std::string str() const;
};

/// 10 log10(P_cross / P_original) at the signal wavelength.
Decibel suppression_signal(const CouplerGeometry &geom, const ModeBeatModel &model);
/// 10 log10(P_original / P_cross) at the idler wavelength.
Decibel suppression_idler(const CouplerGeometry &geom, const ModeBeatModel &model);

struct CouplerMeasurement {
    double stem_length_um = 0.0;
    double wavelength_nm = 0.0;
    double cross_fraction = 0.0;
};

struct BandFit {
    double kappa_stem_per_um = 0.0;  // kappa at the stem gap
    double bend_length_um = 0.0;     // fitted bend-equivalent length
    double sse = 0.0;
};

/// Least-squares fit of sin^2(kappa (L_C + L_b) / 2) to one band's points.
/// All phase branches compatible with the extreme stem lengths seed a
/// Levenberg-Marquardt refinement; the lowest residual wins, ties going to
/// the slowest beat. Requires two distinct stem lengths.
BandFit fit_band(std::span<const CouplerMeasurement> points, double max_bend_length_um);

/// Groups measurements into two bands by wavelength (shorter = signal),
/// fits each band and converts the bend-equivalent length into the decay
/// constant of `geom`'s bend profile. Without bends the decay cannot be
/// observed and `fallback_decay_um` is used.
ModeBeatModel fit_beat_model(std::span<const CouplerMeasurement> measurements, const CouplerGeometry &geom,
                             double fallback_decay_um = 3.0);

/// Longer wavelengths couple more strongly at every gap of the structure.
bool band_ordering_holds(const ModeBeatModel &model, const CouplerGeometry &geom);

struct SweepRow {
    double stem_length_um = 0.0;
    Decibel signal_suppression;
    Decibel idler_suppression;
    double eta_signal = 0.0;  // signal fraction kept in the original port
    double eta_idler = 0.0;   // idler fraction transferred to the cross port
};

std::vector<SweepRow> sweep(const CouplerGeometry &geom, const ModeBeatModel &model,
                            std::span<const double> stem_lengths_um);

/// Sweep row maximising eta_signal * eta_idler.
const SweepRow &best_row(std::span<const SweepRow> rows);

}  // namespace pdcsim::wdm
