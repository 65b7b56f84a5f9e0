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

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pdcsim/random.hpp"
#include "pdcsim/source.hpp"

namespace pdcsim {

enum class DetectorMode { free_running, gated };

struct DetectorModel {
    double efficiency = 1.0;
    double dark_rate_hz = 0.0;
    double dead_time_ns = 0.0;
    double gate_fwhm_ns = 1.16;   // effective Gaussian gate, gated mode only
    double nominal_gate_ns = 2.5;  // recorded, not applied as a hard window
    DetectorMode mode = DetectorMode::free_running;
};

std::vector<std::string> validate(const DetectorModel &det, const std::string &label);

/// Relative trigger-idler delay. Whole repetition periods become a slot
/// offset for the counter; the remainder in (-period/2, period/2] sets the
/// gate overlap.
struct DelaySetting {
    double delay_ns = 0.0;
    double repetition_period_ns = 100.0;

    long slot_offset() const;
    double sub_slot_delay_ns() const;
};

/// Probability of a click for n photons, 1 - (1 - eta g)^n (1 - p_noise).
double click_probability(unsigned n_photons, const DetectorModel &det, double gate_overlap,
                         double noise_probability = 0.0);

/// Gaussian effective-gate response, exp(-4 ln2 (dt / fwhm)^2).
/// Throws ContractError for free-running detectors.
double gate_overlap(double delay_ns, const DetectorModel &det);

/// Time over which uncorrelated counts can produce a click in one slot:
/// the integral of the gate response for gated detectors, the whole
/// repetition period for free-running ones.
double effective_window_ns(const DetectorModel &det, double repetition_period_ns);

/// Per-slot probability of at least one dark or background count.
double noise_probability(const DetectorModel &det, double extra_rate_hz, double repetition_period_ns);

/// Non-paralyzable dead time over click times in ns. Throws ContractError on
/// unordered input.
std::vector<double> apply_dead_time(std::span<const double> click_times_ns, double dead_time_ns);

/// Streaming form of apply_dead_time; carries state across batches.
class DeadTimeFilter {
   public:
    explicit DeadTimeFilter(double dead_time_ns) : dead_(dead_time_ns) {}
    bool accept(double t_ns);

   private:
    double dead_;
    double last_ = -std::numeric_limits<double>::infinity();
    double prev_ = -std::numeric_limits<double>::infinity();
};

struct DetectorSet {
    DetectorModel trigger{0.55, 238.0, 50.0, 1.16, 2.5, DetectorMode::free_running};
    DetectorModel idler1{0.23, 0.0, 0.0, 1.16, 2.5, DetectorMode::gated};
    DetectorModel idler2{0.23, 0.0, 0.0, 1.16, 2.5, DetectorMode::gated};
};

/// Flat uncorrelated count rates on top of detector dark counts, s^-1.
struct BackgroundRates {
    double trigger_hz = 0.0;
    double idler1_hz = 0.0;
    double idler2_hz = 0.0;
};

/// Pump-dependent background: base + per_uw * P on each detector class.
struct BackgroundModel {
    double trigger_hz = 0.0;
    double trigger_per_uw = 0.0;
    double idler_hz = 0.0;
    double idler_per_uw = 0.0;

    BackgroundRates at(double power_uw) const;
};

std::vector<std::string> validate(const BackgroundModel &bg);

struct NoiseProbabilities {
    double trigger = 0.0;
    double idler1 = 0.0;
    double idler2 = 0.0;
};

NoiseProbabilities noise_probabilities(const DetectorSet &dets, const BackgroundRates &bg,
                                       double repetition_period_ns);

struct ClickTriple {
    bool trigger = false;
    bool idler1 = false;
    bool idler2 = false;
    bool operator==(const ClickTriple &) const = default;
};

struct IdlerOverlaps {
    double idler1 = 1.0;
    double idler2 = 1.0;
};

/// Gate overlap of each idler detector at the sub-slot part of the delay;
/// free-running idler detectors see the whole slot.
IdlerOverlaps idler_overlaps(const DetectorSet &dets, const DelaySetting &delay);

/// Photon-induced clicks only (no dark or background counts).
ClickTriple photon_clicks(const PhotonTriple &photons, const DetectorSet &dets, const IdlerOverlaps &overlaps,
                          RandomStream &rng);

/// Clicks for one pulse slot: photon clicks with the idler terms scaled by
/// the gate overlap at the sub-slot delay, OR-ed with noise counts.
ClickTriple detect_pulse(const PhotonTriple &photons, const DetectorSet &dets, const DelaySetting &delay,
                         const BackgroundRates &bg, RandomStream &rng);

}  // namespace pdcsim
