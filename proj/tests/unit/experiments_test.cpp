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

#include "pdcsim/experiments.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "pdcsim/metrics.hpp"

using namespace pdcsim;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg = load_config(PDCSIM_DEFAULT_CONFIG);
    cfg.power_sweep.powers_uw = {0.5, 5.0};
    cfg.delay_scan.delays_ns = {-2.0, -1.0, 0.0, 1.0, 2.0};
    cfg.delay_scan.powers_uw = {5.0};
    return cfg;
}

RunControl small_run(unsigned workers = 1) {
    RunControl r;
    r.n_pulses = 200'000;
    r.repeats = 2;
    r.workers = workers;
    r.master_seed = 99;
    return r;
}

// Lines after the column header, skipping '#' comment lines.
std::size_t data_rows(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        n += !line.empty() && line[0] != '#' ? 1 : 0;
    }
    return n == 0 ? 0 : n - 1;
}

}  // namespace

TEST(PowerSweep, ReproducibleAndWorkerIndependent) {
    const ExperimentConfig cfg = small_config();
    const auto a = run_power_sweep(cfg, small_run(1));
    const auto b = run_power_sweep(cfg, small_run(1));
    const auto c = run_power_sweep(cfg, small_run(3));
    const std::string ca = power_sweep_csv(cfg, a);
    EXPECT_EQ(ca, power_sweep_csv(cfg, b));
    EXPECT_EQ(ca, power_sweep_csv(cfg, c));
    RunControl other = small_run(1);
    other.master_seed = 100;
    EXPECT_NE(ca, power_sweep_csv(cfg, run_power_sweep(cfg, other)));
}

TEST(PowerSweep, PointsCarryEveryOffset) {
    const ExperimentConfig cfg = small_config();
    const auto pts = run_power_sweep(cfg, small_run());
    ASSERT_EQ(pts.size(), 2u);
    for (const auto &p : pts) {
        EXPECT_EQ(p.aligned.n_slots, 400'000u);  // pooled over repeats
        EXPECT_EQ(p.offsets.size(), cfg.power_sweep.rep_offsets.size());
        EXPECT_EQ(p.car_rep_by_offset.size(), cfg.power_sweep.rep_offsets.size());
        EXPECT_TRUE(p.aligned.hierarchy_holds());
        EXPECT_NEAR(p.mean_pairs, cfg.pump.mean_pairs(p.power_uw), 1e-15);
    }
    EXPECT_NEAR(pts[1].oracle.heralding.value, 0.60, 1e-6);
    const std::string csv = power_sweep_csv(cfg, pts);
    EXPECT_NE(csv.find("power_uw"), std::string::npos);
    EXPECT_NE(csv.find("car_rep_m3"), std::string::npos);
    EXPECT_NE(csv.find("oracle_eta_H"), std::string::npos);
}

TEST(OraclePoint, MatchesCalibrationTargets) {
    const ExperimentConfig cfg = load_config(PDCSIM_DEFAULT_CONFIG);
    const OraclePoint p5 = oracle_point(cfg, 5.0);
    EXPECT_NEAR(p5.aligned.trigger * cfg.pump.repetition_rate_hz, 56e3, 1e-3);
    EXPECT_NEAR(p5.metrics.car_dtau.value, 1165.0, 1e-3);
    EXPECT_NEAR(oracle_point(cfg, 0.5).metrics.car_dtau.value, 1383.0, 1e-3);
}

TEST(DelayScan, ZeroBackgroundGivesLowerBound) {
    ExperimentConfig cfg = small_config();
    cfg.background = {};
    cfg.detectors.trigger.dark_rate_hz = 0.0;
    const DelayScan scan = run_delay_scan(cfg, small_run());
    ASSERT_EQ(scan.summaries.size(), 1u);
    const DelaySummary &s = scan.summaries[0];
    EXPECT_EQ(s.far.idler1 + s.far.idler2, 0u);
    EXPECT_EQ(s.car_dtau.status, MetricStatus::lower_bound);
    EXPECT_GT(s.car_dtau.value, 0.0);
    EXPECT_EQ(s.aligned_delay_ns, 0.0);
    EXPECT_FALSE(s.outside_gate);
}

TEST(DelayScan, WidthFollowsTheGate) {
    ExperimentConfig cfg = small_config();
    cfg.delay_scan.delays_ns.clear();
    for (int i = -15; i <= 15; ++i) {
        cfg.delay_scan.delays_ns.push_back(0.2 * i);
    }
    RunControl run = small_run();
    run.n_pulses = 500'000;
    const DelayScan scan = run_delay_scan(cfg, run);
    ASSERT_TRUE(scan.summaries[0].fwhm_ns.has_value());
    EXPECT_NEAR(*scan.summaries[0].fwhm_ns, cfg.detectors.idler1.gate_fwhm_ns, 0.15);
    EXPECT_EQ(scan.points.size(), 31u);
    EXPECT_EQ(data_rows(delay_scan_csv(scan)), 31u);
}

TEST(DelayScan, WarnsWhenGridMissesTheGate) {
    ExperimentConfig cfg = small_config();
    cfg.detectors.idler1.gate_fwhm_ns = 0.2;
    cfg.detectors.idler2.gate_fwhm_ns = 0.2;
    cfg.delay_scan.delays_ns = {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5};
    RunControl run = small_run();
    run.repeats = 1;
    run.n_pulses = 20'000;
    const DelayScan scan = run_delay_scan(cfg, run);
    EXPECT_TRUE(scan.summaries[0].outside_gate);
    EXPECT_NE(delay_summary_csv(scan).find("grid_outside_gate"), std::string::npos);
}

TEST(WdmSweep, SinglePointMatchesDirectEvaluation) {
    ExperimentConfig cfg = load_config(PDCSIM_DEFAULT_CONFIG);
    cfg.stem_lengths_um = {cfg.coupler.stem_length_um};
    const WdmSweep sw = run_wdm_sweep(cfg);
    ASSERT_EQ(sw.rows.size(), 1u);
    const auto s = wdm::port_fractions(sw.geometry, sw.model, 803.0);
    const auto i = wdm::port_fractions(sw.geometry, sw.model, 1576.0);
    EXPECT_DOUBLE_EQ(sw.rows[0].eta_signal, s.original);
    EXPECT_DOUBLE_EQ(sw.rows[0].eta_idler, i.cross);
    EXPECT_DOUBLE_EQ(sw.rows[0].signal_suppression.value, wdm::suppression_signal(sw.geometry, sw.model).value);
    EXPECT_NE(wdm_model_json(sw).find("kappa0"), std::string::npos);
    EXPECT_EQ(data_rows(wdm_sweep_csv(sw)), 1u);
}

TEST(QpmCurves, OperatingPointAndSampledWidth) {
    const ExperimentConfig cfg = load_config(PDCSIM_DEFAULT_CONFIG);
    const QpmCurves q = run_qpm_curves(cfg);
    EXPECT_NEAR(q.operating.signal_nm, 803.0, 1e-6);
    EXPECT_NEAR(q.sampled_fwhm_nm, 0.7, 0.02);
    EXPECT_EQ(q.poling.size(), cfg.qpm_sweep.poling_periods_um.size());
    EXPECT_EQ(q.temperature.size(), cfg.qpm_sweep.temperatures_c.size());
}

TEST(OracleTable, OneRowPerPower) {
    const ExperimentConfig cfg = load_config(PDCSIM_DEFAULT_CONFIG);
    const std::vector<double> powers{0.5, 5.0, 85.14};
    EXPECT_EQ(data_rows(oracle_table_csv(cfg, powers)), 3u);
}

TEST(Writers, ProduceFiles) {
    const fs::path dir = fs::temp_directory_path() / "pdcsim_writers_test";
    fs::remove_all(dir);
    ExperimentConfig cfg = small_config();
    RunControl run = small_run();
    run.repeats = 1;
    run.n_pulses = 20'000;
    write_power_sweep(dir, cfg, run_power_sweep(cfg, run), true);
    write_delay_scan(dir, run_delay_scan(cfg, run), true);
    write_wdm_sweep(dir, run_wdm_sweep(cfg), true);
    write_qpm_curves(dir, run_qpm_curves(cfg), true);
    for (const char *f : {"power_sweep.csv", "rates.svg", "delay_scan.csv", "delay_summary.csv", "delay_scan.svg",
                          "wdm_sweep.csv", "wdm_model.json", "qpm_poling.csv", "qpm_spectrum.svg"}) {
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    }
    fs::remove_all(dir);
}
