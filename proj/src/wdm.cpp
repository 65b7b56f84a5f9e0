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

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <Eigen/Dense>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "pdcsim/errors.hpp"
#include "pdcsim/numeric.hpp"

namespace pdcsim::wdm {

namespace {

constexpr double kPi = std::numbers::pi;

double bend_gap(const CouplerGeometry &g, double s) {
    // s = 0 at the port end, s = bend_length at the stem.
    return g.center_gap_um + 0.5 * (g.port_gap_um - g.center_gap_um) * (1.0 + std::cos(kPi * s / g.bend_length_um));
}

double sse_of(std::span<const CouplerMeasurement> pts, double kappa, double lb) {
    double s = 0.0;
    for (const auto &p : pts) {
        double c = std::sin(0.5 * kappa * (p.stem_length_um + lb));
        double r = c * c - p.cross_fraction;
        s += r * r;
    }
    return s;
}

BandFit refine(std::span<const CouplerMeasurement> pts, double kappa, double lb, double max_lb) {
    double lambda = 1e-3;
    double cur = sse_of(pts, kappa, lb);
    for (int iter = 0; iter < 200 && cur > 0.0; ++iter) {
        Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
        Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
        for (const auto &p : pts) {
            double x = p.stem_length_um + lb;
            double phi = kappa * x;
            double s = std::sin(0.5 * phi);
            double r = s * s - p.cross_fraction;
            double dphi = 0.5 * std::sin(phi);
            Eigen::Vector2d j(dphi * x, dphi * kappa);
            jtj += j * j.transpose();
            jtr += j * r;
        }
        bool improved = false;
        for (int tries = 0; tries < 20; ++tries) {
            Eigen::Matrix2d a = jtj;
            a.diagonal() *= 1.0 + lambda;
            a.diagonal().array() += 1e-300;
            Eigen::Vector2d step = a.ldlt().solve(-jtr);
            if (!step.allFinite()) {
                break;
            }
            double k2 = kappa + step[0];
            double l2 = std::clamp(lb + step[1], 0.0, max_lb);
            if (k2 > 0.0) {
                double s2 = sse_of(pts, k2, l2);
                if (s2 < cur) {
                    double rel = (cur - s2) / cur;
                    kappa = k2;
                    lb = l2;
                    cur = s2;
                    lambda = std::max(lambda * 0.3, 1e-12);
                    improved = rel > 1e-14;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (!improved) {
            break;
        }
    }
    return {kappa, lb, cur};
}

std::string band_error(double wavelength_nm, const ModeBeatModel &m) {
    std::ostringstream os;
    os << "wavelength " << wavelength_nm << " nm lies outside the fitted bands (" << m.signal.wavelength_nm
       << " and " << m.idler.wavelength_nm << " nm, +/- " << m.band_tolerance_nm << " nm)";
    return os.str();
}

}  // namespace

double CouplerGeometry::total_length_um() const {
    return stem_length_um + (with_bends ? 2.0 * bend_length_um : 0.0);
}

double CouplerGeometry::gap_at(double z) const {
    if (!(z >= 0.0 && z <= total_length_um())) {
        throw DomainError("position outside the coupler");
    }
    if (!with_bends) {
        return center_gap_um;
    }
    if (z < bend_length_um) {
        return bend_gap(*this, z);
    }
    double after = z - bend_length_um - stem_length_um;
    if (after <= 0.0) {
        return center_gap_um;
    }
    return bend_gap(*this, bend_length_um - after);
}

std::vector<std::string> validate(const CouplerGeometry &g) {
    std::vector<std::string> out;
    if (!(g.stem_length_um >= 0.0)) {
        out.push_back("wdm.stem_length_um must be >= 0");
    }
    if (!(g.center_gap_um > 0.0)) {
        out.push_back("wdm.center_gap_um must be > 0");
    }
    if (g.with_bends) {
        if (!(g.port_gap_um >= g.center_gap_um)) {
            out.push_back("wdm.port_gap_um must be >= wdm.center_gap_um");
        }
        if (!(g.bend_length_um > 0.0)) {
            out.push_back("wdm.bend_length_um must be > 0");
        }
    }
    return out;
}

double BandCoupling::kappa(double gap_um) const { return kappa0_per_um * std::exp(-gap_um / decay_um); }

const BandCoupling &ModeBeatModel::band_for(double wavelength_nm) const {
    const double ds = std::abs(wavelength_nm - signal.wavelength_nm);
    const double di = std::abs(wavelength_nm - idler.wavelength_nm);
    if (ds <= band_tolerance_nm && ds <= di) {
        return signal;
    }
    if (di <= band_tolerance_nm) {
        return idler;
    }
    throw DomainError(band_error(wavelength_nm, *this));
}

double bend_equivalent_length(const CouplerGeometry &geom, double decay_um) {
    if (!(decay_um > 0.0)) {
        throw DomainError("decay length must be positive");
    }
    if (!geom.with_bends) {
        return 0.0;
    }
    auto f = [&](double s) { return std::exp(-(bend_gap(geom, s) - geom.center_gap_um) / decay_um); };
    double one = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, geom.bend_length_um, 20,
                                                                               1e-13);
    return 2.0 * one;
}

double phase_difference(const CouplerGeometry &geom, const ModeBeatModel &model, double wavelength_nm) {
    const BandCoupling &b = model.band_for(wavelength_nm);
    const double stem = b.kappa(geom.center_gap_um);
    return stem * (geom.stem_length_um + bend_equivalent_length(geom, b.decay_um));
}

double cross_coupling_fraction(const CouplerGeometry &geom, const ModeBeatModel &model, double wavelength_nm) {
    const double s = std::sin(0.5 * phase_difference(geom, model, wavelength_nm));
    return s * s;
}

PortFractions port_fractions(const CouplerGeometry &geom, const ModeBeatModel &model, double wavelength_nm) {
    const double half = 0.5 * phase_difference(geom, model, wavelength_nm);
    const double s = std::sin(half);
    PortFractions p;
    p.cross = s * s;
    p.original = 1.0 - p.cross;
    return p;
}

Decibel Decibel::ratio(double numerator, double denominator) {
    if (!(numerator >= 0.0 && denominator >= 0.0)) {
        throw DomainError("power ratio needs non-negative powers");
    }
    if (numerator == 0.0 && denominator == 0.0) {
        throw DomainError("power ratio of two zero powers");
    }
    if (numerator == 0.0) {
        return {Kind::minus_infinity, 0.0};
    }
    if (denominator == 0.0) {
        return {Kind::plus_infinity, 0.0};
    }
    return {Kind::finite, 10.0 * std::log10(numerator / denominator)};
}

std::string Decibel::str() const {
    switch (kind) {
        case Kind::minus_infinity:
            return "-inf";
        case Kind::plus_infinity:
            return "+inf";
        case Kind::finite:
            break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

Decibel suppression_signal(const CouplerGeometry &geom, const ModeBeatModel &model) {
    PortFractions p = port_fractions(geom, model, model.signal.wavelength_nm);
    return Decibel::ratio(p.cross, p.original);
}

Decibel suppression_idler(const CouplerGeometry &geom, const ModeBeatModel &model) {
    PortFractions p = port_fractions(geom, model, model.idler.wavelength_nm);
    return Decibel::ratio(p.original, p.cross);
}

BandFit fit_band(std::span<const CouplerMeasurement> pts, double max_lb) {
    if (pts.size() < 2) {
        throw FitError("need at least two measurements per band");
    }
    for (const auto &p : pts) {
        if (!(p.cross_fraction >= 0.0 && p.cross_fraction <= 1.0)) {
            throw FitError("cross fraction outside [0, 1]");
        }
        if (!(p.stem_length_um >= 0.0)) {
            throw FitError("negative stem length");
        }
    }
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [](const auto &a, const auto &b) {
        return a.stem_length_um < b.stem_length_um;
    });
    const double l1 = lo->stem_length_um;
    const double l2 = hi->stem_length_um;
    if (!(l2 > l1)) {
        throw FitError("need at least two distinct stem lengths per band");
    }
    auto branches = [](double f) {
        double base = 2.0 * std::asin(std::sqrt(f));
        return std::array<double, 2>{base, 2.0 * kPi - base};
    };
    const auto b1 = branches(lo->cross_fraction);
    const auto b2 = branches(hi->cross_fraction);
    constexpr int kTurns = 16;
    std::optional<BandFit> best;
    for (int k1 = 0; k1 <= kTurns; ++k1) {
        for (double p1 : b1) {
            const double phi1 = p1 + 2.0 * kPi * k1;
            for (int k2 = k1; k2 <= k1 + kTurns; ++k2) {
                for (double p2 : b2) {
                    const double phi2 = p2 + 2.0 * kPi * k2;
                    if (!(phi2 > phi1)) {
                        continue;
                    }
                    const double kappa = (phi2 - phi1) / (l2 - l1);
                    const double lb = phi1 / kappa - l1;
                    if (!(lb >= -1e-9 && lb <= max_lb + 1e-9)) {
                        continue;
                    }
                    BandFit f = refine(pts, kappa, std::clamp(lb, 0.0, max_lb), max_lb);
                    const double tie = 1e-12;
                    if (!best || f.sse < best->sse - tie ||
                        (std::abs(f.sse - best->sse) <= tie && f.kappa_stem_per_um < best->kappa_stem_per_um)) {
                        best = f;
                    }
                }
            }
        }
    }
    if (!best) {
        throw FitError("no phase branch is compatible with the allowed bend length");
    }
    return *best;
}

ModeBeatModel fit_beat_model(std::span<const CouplerMeasurement> measurements, const CouplerGeometry &geom,
                             double fallback_decay_um) {
    if (auto errs = validate(geom); !errs.empty()) {
        throw FitError(errs.front());
    }
    std::vector<CouplerMeasurement> sorted(measurements.begin(), measurements.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &a, const auto &b) { return a.wavelength_nm < b.wavelength_nm; });
    std::vector<std::vector<CouplerMeasurement>> groups;
    for (const auto &m : sorted) {
        if (groups.empty() || m.wavelength_nm - groups.back().back().wavelength_nm > 1.0) {
            groups.emplace_back();
        }
        groups.back().push_back(m);
    }
    if (groups.size() != 2) {
        throw FitError("expected measurements in exactly two wavelength bands, got " +
                       std::to_string(groups.size()));
    }
    const double max_lb = geom.with_bends ? 2.0 * geom.bend_length_um : 0.0;
    ModeBeatModel model;
    for (int g = 0; g < 2; ++g) {
        const auto &pts = groups[g];
        BandFit fit = fit_band(pts, max_lb);
        double centre = 0.0;
        for (const auto &p : pts) {
            centre += p.wavelength_nm;
        }
        centre /= static_cast<double>(pts.size());
        double decay = fallback_decay_um;
        if (geom.with_bends) {
            if (!(fit.bend_length_um > 0.0)) {
                throw FitError("fitted bend-equivalent length is zero; no decay constant reproduces it");
            }
            const double lo = 1e-3;
            const double hi = 1e6;
            auto h = [&](double log_d) { return bend_equivalent_length(geom, std::exp(log_d)) - fit.bend_length_um; };
            if (h(std::log(hi)) < 0.0) {
                throw FitError("fitted bend-equivalent length exceeds what the bend profile allows");
            }
            decay = std::exp(find_root(h, std::log(lo), std::log(hi), 1e-10 * fit.bend_length_um, 1e-15));
        }
        BandCoupling band;
        band.wavelength_nm = centre;
        band.decay_um = decay;
        band.kappa0_per_um = fit.kappa_stem_per_um * std::exp(geom.center_gap_um / decay);
        (g == 0 ? model.signal : model.idler) = band;
    }
    return model;
}

bool band_ordering_holds(const ModeBeatModel &model, const CouplerGeometry &geom) {
    const double top = geom.with_bends ? geom.port_gap_um : geom.center_gap_um;
    const int steps = 64;
    for (int i = 0; i <= steps; ++i) {
        double d = geom.center_gap_um + (top - geom.center_gap_um) * i / static_cast<double>(steps);
        if (!(model.idler.kappa(d) > model.signal.kappa(d))) {
            return false;
        }
    }
    return true;
}

std::vector<SweepRow> sweep(const CouplerGeometry &geom, const ModeBeatModel &model,
                            std::span<const double> stem_lengths_um) {
    std::vector<SweepRow> rows;
    rows.reserve(stem_lengths_um.size());
    for (double l : stem_lengths_um) {
        CouplerGeometry g = geom;
        g.stem_length_um = l;
        if (auto errs = validate(g); !errs.empty()) {
            throw DomainError(errs.front());
        }
        SweepRow r;
        r.stem_length_um = l;
        r.signal_suppression = suppression_signal(g, model);
        r.idler_suppression = suppression_idler(g, model);
        r.eta_signal = port_fractions(g, model, model.signal.wavelength_nm).original;
        r.eta_idler = port_fractions(g, model, model.idler.wavelength_nm).cross;
        rows.push_back(r);
    }
    return rows;
}

const SweepRow &best_row(std::span<const SweepRow> rows) {
    if (rows.empty()) {
        throw DomainError("empty sweep");
    }
    return *std::max_element(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
        return a.eta_signal * a.eta_idler < b.eta_signal * b.eta_idler;
    });
}

}  // namespace pdcsim::wdm
