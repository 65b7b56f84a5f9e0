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
#include <filesystem>
#include <string>
#include <vector>

#include "pdcsim/detect.hpp"
#include "pdcsim/qpm.hpp"
#include "pdcsim/source.hpp"
#include "pdcsim/wdm.hpp"

namespace pdcsim {

/// Operating points the background and signal-arm residual are tuned to.
struct CalibrationTargets {
    double heralding = 0.60;
    double heralding_power_uw = 5.0;
    double trigger_rate_hz = 56e3;
    double trigger_rate_power_uw = 5.0;
    double car_dtau_low = 1383.0;
    double car_dtau_low_power_uw = 0.5;
    double car_dtau_high = 1165.0;
    double car_dtau_high_power_uw = 5.0;
    std::string residual_stage = "residual";
};

struct PowerSweepSpec {
    std::vector<double> powers_uw;
    std::vector<long> rep_offsets{1, 3};
};

struct DelayScanSpec {
    std::vector<double> delays_ns;
    std::vector<double> powers_uw{0.5, 5.0};
    double far_delay_ns = 50.0;
    std::uint64_t far_delay_pulses = 0;  // 0: use n_pulses
};

struct QpmSweepSpec {
    std::vector<double> poling_periods_um;
    std::vector<double> temperatures_c;
    double spectrum_half_width_nm = 3.0;
    double spectrum_step_nm = 0.01;
    qpm::SearchWindow window;
};

struct ExperimentConfig {
    int schema_version = 1;
    std::uint64_t master_seed = 1;
    std::uint64_t n_pulses = 10'000'000;
    unsigned repeats = 1;
    unsigned workers = 1;
    std::string output_dir = "out";

    qpm::DispersionModel dispersion;
    qpm::QpmConfig qpm;
    qpm::OffsetTargets qpm_calibration;

    wdm::CouplerGeometry coupler;
    std::vector<wdm::CouplerMeasurement> coupler_measurements;
    double coupler_band_tolerance_nm = 25.0;
    double coupler_fallback_decay_um = 3.0;

    PairLaw law = PairLaw::thermal;
    unsigned n_max = 0;
    PumpPowerMap pump;
    double splitter_ratio = 0.5;
    OpticalChannel signal_channel;
    OpticalChannel idler_channel;

    DetectorSet detectors;
    BackgroundModel background;
    bool dead_time = true;

    CalibrationTargets calibration;
    PowerSweepSpec power_sweep;
    DelayScanSpec delay_scan;
    std::vector<double> stem_lengths_um;
    QpmSweepSpec qpm_sweep;

    double repetition_period_ns() const { return 1e9 / pump.repetition_rate_hz; }
};

/// Every semantic problem, one named diagnostic each.
std::vector<std::string> validate(const ExperimentConfig &cfg);

/// Parses JSON text. Unknown keys, type errors and failed validation are
/// all collected and thrown together as ConfigError.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::filesystem::path &path);

}  // namespace pdcsim
