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

// pdcsim command-line driver.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "pdcsim/calibration.hpp"
#include "pdcsim/config.hpp"
#include "pdcsim/errors.hpp"
#include "pdcsim/experiments.hpp"
#include "pdcsim/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> pulses;
    std::optional<unsigned> repeats;
    std::optional<unsigned> workers;
    std::optional<std::string> out;
    bool plots = false;
};

// Loads the file, applies command-line overrides and revalidates, so an
// override such as --pulses 0 is reported like a bad config value.
pdcsim::ExperimentConfig load(const Options &o) {
    pdcsim::ExperimentConfig cfg = pdcsim::load_config(o.config);
    if (o.seed) {
        cfg.master_seed = *o.seed;
    }
    if (o.pulses) {
        cfg.n_pulses = *o.pulses;
    }
    if (o.repeats) {
        cfg.repeats = *o.repeats;
    }
    if (o.workers) {
        cfg.workers = *o.workers;
    }
    if (o.out) {
        cfg.output_dir = *o.out;
    }
    auto problems = pdcsim::validate(cfg);
    if (!problems.empty()) {
        throw pdcsim::ConfigError(std::move(problems));
    }
    return cfg;
}

void say_written(const std::filesystem::path &dir) { std::cout << "wrote " << dir.string() << "\n"; }

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"pdcsim: pulsed PDC heralded-photon source simulator"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub, bool simulates) {
        sub->add_option("--config", o.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output directory (overrides output_dir)");
        sub->add_flag("--plots", o.plots, "also write SVG plots");
        if (simulates) {
            sub->add_option("--seed", o.seed, "master seed");
            sub->add_option("--pulses", o.pulses, "pulses per sweep point");
            sub->add_option("--repeats", o.repeats, "independent repeats per point");
            sub->add_option("--workers", o.workers, "worker threads (0 = all cores); does not change results");
        }
    };
    auto *power = app.add_subcommand("power-sweep", "rates and figures of merit versus pump power");
    common(power, true);
    auto *delay = app.add_subcommand("delay-scan", "Klyshko efficiency versus idler delay");
    common(delay, true);
    auto *wdm = app.add_subcommand("wdm-sweep", "coupler port fractions versus stem length");
    common(wdm, false);
    auto *qpm = app.add_subcommand("qpm-curves", "QPM tuning curves and spectrum");
    common(qpm, false);
    auto *oracle = app.add_subcommand("oracle-table", "exact expected probabilities per power");
    common(oracle, false);
    auto *check = app.add_subcommand("validate-config", "validate a config and report every problem");
    common(check, true);
    auto *cal = app.add_subcommand("calibrate", "solve background and QPM offsets against the calibration targets");
    common(cal, false);

    CLI11_PARSE(app, argc, argv);

    try {
        const pdcsim::ExperimentConfig cfg = load(o);
        const std::filesystem::path dir = cfg.output_dir;
        const pdcsim::RunControl run = pdcsim::run_control(cfg);
        if (power->parsed()) {
            const auto points = pdcsim::run_power_sweep(cfg, run);
            pdcsim::write_power_sweep(dir, cfg, points, o.plots);
            for (const auto &p : points) {
                std::cout << "P=" << pdcsim::report::num(p.power_uw) << " uW\n" << pdcsim::summary_text(p.metrics);
            }
            say_written(dir);
        } else if (delay->parsed()) {
            const auto scan = pdcsim::run_delay_scan(cfg, run);
            pdcsim::write_delay_scan(dir, scan, o.plots);
            for (const auto &s : scan.summaries) {
                std::cout << "P=" << pdcsim::report::num(s.power_uw) << " uW CAR_dtau " << s.car_dtau.str()
                          << " FWHM " << (s.fwhm_ns ? pdcsim::report::num(*s.fwhm_ns) + " ns" : "n/a") << "\n";
                if (s.outside_gate) {
                    std::cerr << "warning: delay grid lies outside the idler gate at P="
                              << pdcsim::report::num(s.power_uw) << " uW\n";
                }
            }
            say_written(dir);
        } else if (wdm->parsed()) {
            const auto w = pdcsim::run_wdm_sweep(cfg);
            pdcsim::write_wdm_sweep(dir, w, o.plots);
            say_written(dir);
        } else if (qpm->parsed()) {
            const auto c = pdcsim::run_qpm_curves(cfg);
            pdcsim::write_qpm_curves(dir, c, o.plots);
            std::cout << "lambda_s " << pdcsim::report::num(c.operating.signal_nm) << " nm, lambda_i "
                      << pdcsim::report::num(c.operating.idler_nm) << " nm, FWHM "
                      << pdcsim::report::num(c.operating.spectral_fwhm_nm) << " nm\n";
            say_written(dir);
        } else if (oracle->parsed()) {
            const std::string table = pdcsim::oracle_table_csv(cfg, cfg.power_sweep.powers_uw);
            if (o.out) {
                pdcsim::report::write_text(dir / "oracle_table.csv", table);
                say_written(dir);
            } else {
                std::cout << table;
            }
        } else if (check->parsed()) {
            std::cout << "config OK\n";
        } else if (cal->parsed()) {
            const auto c = pdcsim::calibrate(cfg);
            std::cout << pdcsim::calibration_summary(cfg, c);
        }
    } catch (const pdcsim::ConfigError &e) {
        std::cerr << "invalid configuration:\n";
        for (const auto &d : e.diagnostics()) {
            std::cerr << "  - " << d << "\n";
        }
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
