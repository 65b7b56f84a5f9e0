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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdcsim/config.hpp"
#include "pdcsim/counter.hpp"
#include "pdcsim/metrics.hpp"
#include "pdcsim/oracle.hpp"
#include "pdcsim/qpm.hpp"
#include "pdcsim/simulation.hpp"
#include "pdcsim/wdm.hpp"

namespace pdcsim {

struct RunControl {
    std::uint64_t n_pulses = 10'000'000;
    unsigned repeats = 1;
    unsigned workers = 1;
    std::uint64_t master_seed = 1;
};

RunControl run_control(const ExperimentConfig &cfg);

/// Simulation inputs at a pump power and trigger-idler delay.
SimulationSetup setup_at(const ExperimentConfig &cfg, double power_uw, double delay_ns = 0.0);
MetricsContext metrics_context(const ExperimentConfig &cfg);
wdm::ModeBeatModel coupler_model(const ExperimentConfig &cfg);

/// Oracle expectations at one power, per slot.
struct OraclePoint {
    double power_uw = 0.0;
    double mean_pairs = 0.0;
    SlotProbabilities aligned;
    SlotProbabilities shifted;  // at the far delay
    OffsetProbabilities offset;
    MetricsReport metrics;  // evaluated on expectations over n_slots
};

OraclePoint oracle_point(const ExperimentConfig &cfg, double power_uw, double n_slots = 1e7);

struct PowerPoint {
    double power_uw = 0.0;
    double mean_pairs = 0.0;
    CountTotals aligned;
    CountTotals shifted;
    std::vector<CountTotals> offsets;  // one per rep offset
    MetricsReport metrics;             // CAR_rep at the first rep offset
    std::vector<Metric> car_rep_by_offset;
    MetricsReport oracle;
};

std::vector<PowerPoint> run_power_sweep(const ExperimentConfig &cfg, const RunControl &run);
std::string power_sweep_csv(const ExperimentConfig &cfg, std::span<const PowerPoint> points);

struct DelayPoint {
    double power_uw = 0.0;
    double delay_ns = 0.0;
    CountTotals totals;
    Metric klyshko;
};

struct DelaySummary {
    double power_uw = 0.0;
    double aligned_delay_ns = 0.0;  // grid point nearest zero delay
    CountTotals aligned;
    CountTotals far;
    Metric car_dtau;
    std::optional<double> fwhm_ns;
    bool outside_gate = false;  // no grid point reaches half the gate response
};

struct DelayScan {
    std::vector<DelayPoint> points;
    std::vector<DelaySummary> summaries;
};

DelayScan run_delay_scan(const ExperimentConfig &cfg, const RunControl &run);
std::string delay_scan_csv(const DelayScan &scan);
std::string delay_summary_csv(const DelayScan &scan);

struct WdmSweep {
    wdm::CouplerGeometry geometry;
    wdm::ModeBeatModel model;
    std::vector<wdm::SweepRow> rows;
};

WdmSweep run_wdm_sweep(const ExperimentConfig &cfg);
std::string wdm_sweep_csv(const WdmSweep &sweep);
/// Fitted per-band parameters, in the JSON layout of a config fragment.
std::string wdm_model_json(const WdmSweep &sweep);

struct QpmCurves {
    qpm::PhaseMatchSolution operating;
    std::vector<qpm::TuningPoint> poling;
    std::vector<qpm::TuningPoint> temperature;
    std::vector<qpm::SpectrumSample> spectrum;
    double sampled_fwhm_nm = 0.0;
};

QpmCurves run_qpm_curves(const ExperimentConfig &cfg);
std::string qpm_tuning_csv(std::span<const qpm::TuningPoint> points, const std::string &parameter);
std::string qpm_spectrum_csv(const QpmCurves &curves);

std::string oracle_table_csv(const ExperimentConfig &cfg, std::span<const double> powers_uw);

/// File writers used by the command line; plots are SVG next to the CSVs.
void write_power_sweep(const std::filesystem::path &dir, const ExperimentConfig &cfg,
                       std::span<const PowerPoint> points, bool plots);
void write_delay_scan(const std::filesystem::path &dir, const DelayScan &scan, bool plots);
void write_wdm_sweep(const std::filesystem::path &dir, const WdmSweep &sweep, bool plots);
void write_qpm_curves(const std::filesystem::path &dir, const QpmCurves &curves, bool plots);

}  // namespace pdcsim
