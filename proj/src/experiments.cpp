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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pdcsim/errors.hpp"
#include "pdcsim/numeric.hpp"
#include "pdcsim/report.hpp"

namespace pdcsim {

using report::num;

namespace {

constexpr std::uint64_t kPowerSweepTag = 1;
constexpr std::uint64_t kDelayScanTag = 2;

std::string metric_cells(const Metric &m) {
    if (m.status == MetricStatus::undefined) {
        return ",,undefined";
    }
    return num(m.value) + "," + num(m.error) + "," + status_name(m.status);
}

std::string value_or_empty(const Metric &m) { return m.status == MetricStatus::undefined ? "" : num(m.value); }

double metric_value(const Metric &m) { return m.status == MetricStatus::undefined ? NAN : m.value; }

RunOptions options(const RunControl &run, std::vector<std::uint64_t> tags, std::vector<long> offsets,
                   std::uint64_t pulses) {
    RunOptions o;
    o.n_pulses = pulses;
    o.master_seed = run.master_seed;
    o.tags = std::move(tags);
    o.workers = run.workers;
    o.offsets = std::move(offsets);
    return o;
}

void pool(std::optional<CountTotals> &acc, const CountTotals &t) {
    if (acc) {
        *acc += t;
    } else {
        acc = t;
    }
}

}  // namespace

RunControl run_control(const ExperimentConfig &cfg) {
    return {cfg.n_pulses, cfg.repeats, cfg.workers, cfg.master_seed};
}

SimulationSetup setup_at(const ExperimentConfig &cfg, double power_uw, double delay_ns) {
    SimulationSetup s;
    s.pairs = PairNumberDistribution(cfg.law, cfg.pump.mean_pairs(power_uw), cfg.n_max);
    s.signal_channel = cfg.signal_channel;
    s.idler_channel = cfg.idler_channel;
    s.splitter_ratio = cfg.splitter_ratio;
    s.detectors = cfg.detectors;
    s.background = cfg.background.at(power_uw);
    s.delay = {delay_ns, cfg.repetition_period_ns()};
    s.dead_time = cfg.dead_time;
    return s;
}

MetricsContext metrics_context(const ExperimentConfig &cfg) {
    MetricsContext c;
    c.eta_id = 0.5 * (cfg.detectors.idler1.efficiency + cfg.detectors.idler2.efficiency);
    for (const auto &s : cfg.signal_channel.stages()) {
        c.signal_transmissions.push_back(s.transmission);
    }
    c.eta_si = cfg.detectors.trigger.efficiency;
    c.repetition_rate_hz = cfg.pump.repetition_rate_hz;
    return c;
}

wdm::ModeBeatModel coupler_model(const ExperimentConfig &cfg) {
    wdm::ModeBeatModel m = wdm::fit_beat_model(cfg.coupler_measurements, cfg.coupler, cfg.coupler_fallback_decay_um);
    m.band_tolerance_nm = cfg.coupler_band_tolerance_nm;
    return m;
}

OraclePoint oracle_point(const ExperimentConfig &cfg, double power_uw, double n_slots) {
    OraclePoint p;
    p.power_uw = power_uw;
    p.mean_pairs = cfg.pump.mean_pairs(power_uw);
    p.aligned = expected_rates(oracle_config(setup_at(cfg, power_uw, 0.0)));
    p.shifted = expected_rates(oracle_config(setup_at(cfg, power_uw, cfg.delay_scan.far_delay_ns)));
    p.offset = expected_offset_rates(p.aligned);
    MetricsInputs in;
    in.aligned = expected_totals(p.aligned, n_slots);
    in.shifted = expected_totals(p.shifted, n_slots);
    in.offset = expected_totals(p.aligned, p.offset, n_slots);
    p.metrics = evaluate(in, metrics_context(cfg));
    return p;
}

std::vector<PowerPoint> run_power_sweep(const ExperimentConfig &cfg, const RunControl &run) {
    if (run.n_pulses == 0 || run.repeats == 0) {
        throw DomainError("power sweep needs n_pulses > 0 and repeats >= 1");
    }
    const MetricsContext ctx = metrics_context(cfg);
    std::vector<long> offsets{0};
    offsets.insert(offsets.end(), cfg.power_sweep.rep_offsets.begin(), cfg.power_sweep.rep_offsets.end());
    std::vector<PowerPoint> out;
    for (std::size_t i = 0; i < cfg.power_sweep.powers_uw.size(); ++i) {
        const double power = cfg.power_sweep.powers_uw[i];
        const SimulationSetup aligned_setup = setup_at(cfg, power, 0.0);
        const SimulationSetup shifted_setup = setup_at(cfg, power, cfg.delay_scan.far_delay_ns);
        std::vector<std::optional<CountTotals>> pooled(offsets.size());
        std::optional<CountTotals> pooled_shifted;
        std::vector<MetricsReport> per_repeat;
        for (unsigned r = 0; r < run.repeats; ++r) {
            RunResult a = simulate(aligned_setup, options(run, {kPowerSweepTag, i, r, 0}, offsets, run.n_pulses));
            RunResult s = simulate(shifted_setup, options(run, {kPowerSweepTag, i, r, 1}, {0}, run.n_pulses));
            for (std::size_t k = 0; k < offsets.size(); ++k) {
                pool(pooled[k], a.totals[k]);
            }
            pool(pooled_shifted, s.totals[0]);
            if (run.repeats > 1) {
                MetricsInputs in{TotalsView::of(a.totals[0]), TotalsView::of(s.totals[0]), std::nullopt};
                if (offsets.size() > 1) {
                    in.offset = TotalsView::of(a.totals[1]);
                }
                per_repeat.push_back(evaluate(in, ctx));
            }
        }
        PowerPoint p;
        p.power_uw = power;
        p.mean_pairs = cfg.pump.mean_pairs(power);
        p.aligned = *pooled[0];
        p.shifted = *pooled_shifted;
        for (std::size_t k = 1; k < offsets.size(); ++k) {
            p.offsets.push_back(*pooled[k]);
        }
        MetricsInputs in{TotalsView::of(p.aligned), TotalsView::of(p.shifted), std::nullopt};
        if (!p.offsets.empty()) {
            in.offset = TotalsView::of(p.offsets[0]);
        }
        p.metrics = evaluate(in, ctx);
        if (run.repeats > 1) {
            p.metrics = with_repeat_errors(p.metrics, per_repeat);
        }
        for (const auto &o : p.offsets) {
            p.car_rep_by_offset.push_back(car_rep(TotalsView::of(p.aligned), TotalsView::of(o)));
        }
        p.oracle = oracle_point(cfg, power, static_cast<double>(p.aligned.n_slots)).metrics;
        out.push_back(std::move(p));
    }
    return out;
}

std::string power_sweep_csv(const ExperimentConfig &cfg, std::span<const PowerPoint> points) {
    std::vector<std::string> cols{"power_uw", "mean_pairs", "n_slots",   "trigger",  "idler1",   "idler2",
                                  "triple",   "R_Si_hz",    "R_Si_err",  "R_Id1_hz", "R_Id2_hz", "R_c_hz"};
    std::istringstream header(metrics_csv_header());
    for (std::string c; std::getline(header, c, ',');) {
        cols.push_back(c);
    }
    for (long m : cfg.power_sweep.rep_offsets) {
        cols.push_back("car_rep_m" + std::to_string(m));
        cols.push_back("car_rep_m" + std::to_string(m) + "_err");
    }
    for (const char *c : {"oracle_eta_H", "oracle_g2_zero", "oracle_car_dtau", "oracle_car_rep", "oracle_car_hop",
                          "oracle_mean_photons"}) {
        cols.push_back(c);
    }
    report::CsvTable t("power-sweep", 1, cols);
    t.add_note(std::string("law=") + law_name(cfg.law) + " seed=" + std::to_string(cfg.master_seed) +
               " far_delay_ns=" + num(cfg.delay_scan.far_delay_ns));
    for (const auto &p : points) {
        const RateSet r = rates(p.aligned, cfg.pump.repetition_rate_hz);
        std::vector<std::string> row{num(p.power_uw),         num(p.mean_pairs),
                                     std::to_string(p.aligned.n_slots), std::to_string(p.aligned.trigger),
                                     std::to_string(p.aligned.idler1),  std::to_string(p.aligned.idler2),
                                     std::to_string(p.aligned.triple),  num(r.trigger.value),
                                     num(r.trigger.error),      num(r.idler1.value),
                                     num(r.idler2.value),       num(r.triple.value)};
        std::istringstream cells(metrics_csv_fields(p.metrics));
        for (std::string c; std::getline(cells, c, ',');) {
            row.push_back(c);
        }
        // getline drops a trailing empty field.
        while (row.size() < 12 + 24) {
            row.emplace_back();
        }
        for (const auto &m : p.car_rep_by_offset) {
            row.push_back(value_or_empty(m));
            row.push_back(m.ok() ? num(m.error) : "");
        }
        for (const Metric *m : {&p.oracle.heralding, &p.oracle.g2_zero, &p.oracle.car_dtau, &p.oracle.car_rep,
                                &p.oracle.car_hop, &p.oracle.mean_photons}) {
            row.push_back(value_or_empty(*m));
        }
        t.add_row(std::move(row));
    }
    return t.str();
}

DelayScan run_delay_scan(const ExperimentConfig &cfg, const RunControl &run) {
    const auto &spec = cfg.delay_scan;
    if (spec.delays_ns.empty()) {
        throw DomainError("delay scan needs at least one delay");
    }
    const std::uint64_t far_pulses = spec.far_delay_pulses ? spec.far_delay_pulses : run.n_pulses;
    DelayScan scan;
    for (std::size_t pi = 0; pi < spec.powers_uw.size(); ++pi) {
        const double power = spec.powers_uw[pi];
        std::vector<DelayPoint> pts;
        for (std::size_t di = 0; di < spec.delays_ns.size(); ++di) {
            const SimulationSetup s = setup_at(cfg, power, spec.delays_ns[di]);
            std::optional<CountTotals> acc;
            for (unsigned r = 0; r < run.repeats; ++r) {
                pool(acc, simulate(s, options(run, {kDelayScanTag, pi, di, r}, {0}, run.n_pulses)).totals[0]);
            }
            pts.push_back({power, spec.delays_ns[di], *acc, klyshko(TotalsView::of(*acc))});
        }
        const SimulationSetup far_setup = setup_at(cfg, power, spec.far_delay_ns);
        std::optional<CountTotals> far;
        for (unsigned r = 0; r < run.repeats; ++r) {
            pool(far, simulate(far_setup, options(run, {kDelayScanTag, pi, spec.delays_ns.size(), r}, {0}, far_pulses))
                          .totals[0]);
        }

        DelaySummary sum;
        sum.power_uw = power;
        const auto nearest = std::min_element(pts.begin(), pts.end(), [](const auto &a, const auto &b) {
            return std::abs(a.delay_ns) < std::abs(b.delay_ns);
        });
        sum.aligned_delay_ns = nearest->delay_ns;
        sum.aligned = nearest->totals;
        sum.far = *far;
        sum.car_dtau = car_dtau(TotalsView::of(sum.aligned), TotalsView::of(sum.far));

        std::vector<std::size_t> order(pts.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pts[a].delay_ns < pts[b].delay_ns; });
        std::vector<double> x;
        std::vector<double> y;
        double best_overlap = 0.0;
        for (std::size_t k : order) {
            x.push_back(pts[k].delay_ns);
            y.push_back(pts[k].klyshko.ok() ? pts[k].klyshko.value : 0.0);
            const IdlerOverlaps g = idler_overlaps(cfg.detectors, DelaySetting{pts[k].delay_ns,
                                                                                 cfg.repetition_period_ns()});
            best_overlap = std::max(best_overlap, std::max(g.idler1, g.idler2));
        }
        sum.fwhm_ns = half_max_width(x, y);
        sum.outside_gate = best_overlap < 0.5;
        for (std::size_t k : order) {
            scan.points.push_back(pts[k]);
        }
        scan.summaries.push_back(sum);
    }
    return scan;
}

std::string delay_scan_csv(const DelayScan &scan) {
    report::CsvTable t("delay-scan", 1,
                       {"power_uw", "delay_ns", "n_slots", "trigger", "idler1", "idler2", "triple", "eta_K",
                        "eta_K_err", "eta_K_flag"});
    for (const auto &p : scan.points) {
        std::vector<std::string> row{num(p.power_uw),
                                     num(p.delay_ns),
                                     std::to_string(p.totals.n_slots),
                                     std::to_string(p.totals.trigger),
                                     std::to_string(p.totals.idler1),
                                     std::to_string(p.totals.idler2),
                                     std::to_string(p.totals.triple)};
        std::istringstream cells(metric_cells(p.klyshko));
        for (std::string c; std::getline(cells, c, ',');) {
            row.push_back(c);
        }
        t.add_row(std::move(row));
    }
    return t.str();
}

std::string delay_summary_csv(const DelayScan &scan) {
    report::CsvTable t("delay-summary", 1,
                       {"power_uw", "aligned_delay_ns", "far_n_slots", "far_trigger", "far_doubles", "car_dtau",
                        "car_dtau_err", "car_dtau_flag", "onf", "fwhm_ns", "warning"});
    for (const auto &s : scan.summaries) {
        std::vector<std::string> row{num(s.power_uw), num(s.aligned_delay_ns), std::to_string(s.far.n_slots),
                                     std::to_string(s.far.trigger), std::to_string(s.far.idler1 + s.far.idler2)};
        std::istringstream cells(metric_cells(s.car_dtau));
        for (std::string c; std::getline(cells, c, ',');) {
            row.push_back(c);
        }
        row.push_back(s.car_dtau.ok() && s.car_dtau.value > 0.0 ? num(1.0 / s.car_dtau.value) : "");
        row.push_back(s.fwhm_ns ? num(*s.fwhm_ns) : "");
        row.push_back(s.outside_gate ? "grid_outside_gate" : "");
        t.add_row(std::move(row));
    }
    return t.str();
}

WdmSweep run_wdm_sweep(const ExperimentConfig &cfg) {
    WdmSweep w;
    w.geometry = cfg.coupler;
    w.model = coupler_model(cfg);
    w.rows = wdm::sweep(cfg.coupler, w.model, cfg.stem_lengths_um);
    return w;
}

std::string wdm_sweep_csv(const WdmSweep &w) {
    report::CsvTable t("wdm-sweep", 1, {"L_C_um", "S_s_dB", "S_i_dB", "eta_s", "eta_i"});
    for (const auto &r : w.rows) {
        t.add_row({num(r.stem_length_um), r.signal_suppression.str(), r.idler_suppression.str(), num(r.eta_signal),
                   num(r.eta_idler)});
    }
    return t.str();
}

std::string wdm_model_json(const WdmSweep &w) {
    auto band = [](const wdm::BandCoupling &b) {
        return "{\"wavelength_nm\": " + num(b.wavelength_nm) + ", \"kappa0_per_um\": " + num(b.kappa0_per_um) +
               ", \"decay_um\": " + num(b.decay_um) + "}";
    };
    return "{\n  \"signal\": " + band(w.model.signal) + ",\n  \"idler\": " + band(w.model.idler) + "\n}\n";
}

QpmCurves run_qpm_curves(const ExperimentConfig &cfg) {
    QpmCurves c;
    const auto &q = cfg.qpm_sweep;
    c.operating = qpm::solve_signal_idler(cfg.dispersion, cfg.qpm, q.window);
    c.poling = qpm::tuning_curve(cfg.dispersion, qpm::SweepParameter::poling_period, q.poling_periods_um, cfg.qpm,
                                 q.window);
    c.temperature =
        qpm::tuning_curve(cfg.dispersion, qpm::SweepParameter::temperature, q.temperatures_c, cfg.qpm, q.window);
    const auto n = static_cast<long>(std::llround(2.0 * q.spectrum_half_width_nm / q.spectrum_step_nm));
    std::vector<double> grid;
    for (long k = 0; k <= n; ++k) {
        grid.push_back(c.operating.signal_nm - q.spectrum_half_width_nm + static_cast<double>(k) * q.spectrum_step_nm);
    }
    c.spectrum = qpm::spectrum(cfg.dispersion, cfg.qpm, grid);
    c.sampled_fwhm_nm = qpm::sampled_fwhm(c.spectrum);
    return c;
}

std::string qpm_tuning_csv(std::span<const qpm::TuningPoint> points, const std::string &parameter) {
    report::CsvTable t("qpm-tuning", 1, {"sweep_value", "lambda_s_nm", "lambda_i_nm", "fwhm_nm", "error"});
    t.add_note("sweep=" + parameter);
    for (const auto &p : points) {
        if (p.solution) {
            t.add_row({num(p.sweep_value), num(p.solution->signal_nm), num(p.solution->idler_nm),
                       num(p.solution->spectral_fwhm_nm), ""});
        } else {
            std::string e = p.error;
            std::replace(e.begin(), e.end(), ',', ';');
            t.add_row({num(p.sweep_value), "", "", "", "\"" + e + "\""});
        }
    }
    return t.str();
}

std::string qpm_spectrum_csv(const QpmCurves &c) {
    report::CsvTable t("qpm-spectrum", 1, {"lambda_s_nm", "intensity"});
    t.add_note("lambda_s_nm=" + num(c.operating.signal_nm) + " lambda_i_nm=" + num(c.operating.idler_nm) +
               " fwhm_nm=" + num(c.operating.spectral_fwhm_nm) + " sampled_fwhm_nm=" + num(c.sampled_fwhm_nm));
    for (const auto &s : c.spectrum) {
        t.add_row({num(s.signal_nm), num(s.intensity)});
    }
    return t.str();
}

std::string oracle_table_csv(const ExperimentConfig &cfg, std::span<const double> powers_uw) {
    report::CsvTable t("oracle-table", 1,
                       {"power_uw", "mean_pairs", "p_trigger", "p_trig_id1", "p_trig_id2", "p_triple",
                        "p_id1_single", "p_id2_single", "tail_mass", "R_Si_hz", "eta_K", "eta_H", "alpha",
                        "g2_zero", "car_dtau", "car_rep", "car_hop", "mean_photons"});
    t.add_note(std::string("law=") + law_name(cfg.law));
    for (double p : powers_uw) {
        const OraclePoint o = oracle_point(cfg, p);
        const auto &m = o.metrics;
        t.add_row({num(p), num(o.mean_pairs), num(o.aligned.trigger), num(o.aligned.trig_id1),
                   num(o.aligned.trig_id2), num(o.aligned.triple), num(o.aligned.idler1_single),
                   num(o.aligned.idler2_single), num(o.aligned.tail_mass),
                   num(o.aligned.trigger * cfg.pump.repetition_rate_hz), value_or_empty(m.klyshko),
                   value_or_empty(m.heralding), value_or_empty(m.alpha), value_or_empty(m.g2_zero),
                   value_or_empty(m.car_dtau), value_or_empty(m.car_rep), value_or_empty(m.car_hop),
                   value_or_empty(m.mean_photons)});
    }
    return t.str();
}

void write_power_sweep(const std::filesystem::path &dir, const ExperimentConfig &cfg,
                       std::span<const PowerPoint> points, bool plots) {
    report::write_text(dir / "power_sweep.csv", power_sweep_csv(cfg, points));
    if (!plots) {
        return;
    }
    std::vector<double> x;
    for (const auto &p : points) {
        x.push_back(p.power_uw);
    }
    auto series = [&](const std::string &label, auto get) {
        report::Series s{label, x, {}};
        for (const auto &p : points) {
            s.y.push_back(get(p));
        }
        return s;
    };
    const double f = cfg.pump.repetition_rate_hz;
    auto per_s = [f](std::uint64_t c, std::uint64_t n) { return static_cast<double>(c) / static_cast<double>(n) * f; };
    report::write_text(dir / "rates.svg",
                       report::render_svg({"Count rates", "pump power (uW)", "rate (1/s)", true, true,
                                           {series("R_Si", [&](const PowerPoint &p) {
                                                return per_s(p.aligned.trigger, p.aligned.n_slots);
                                            }),
                                            series("R_Id,1", [&](const PowerPoint &p) {
                                                return per_s(p.aligned.idler1, p.aligned.n_slots);
                                            }),
                                            series("R_Id,2", [&](const PowerPoint &p) {
                                                return per_s(p.aligned.idler2, p.aligned.n_slots);
                                            }),
                                            series("R_c", [&](const PowerPoint &p) {
                                                return per_s(p.aligned.triple, p.aligned.n_slots);
                                            })}}));
    report::write_text(
        dir / "efficiency.svg",
        report::render_svg({"Klyshko and heralding efficiency", "pump power (uW)", "efficiency", true, false,
                            {series("eta_K", [](const PowerPoint &p) { return metric_value(p.metrics.klyshko); }),
                             series("eta_H", [](const PowerPoint &p) { return metric_value(p.metrics.heralding); }),
                             series("eta_H oracle",
                                    [](const PowerPoint &p) { return metric_value(p.oracle.heralding); })}}));
    report::write_text(
        dir / "g2.svg",
        report::render_svg({"Conditioned g2(0) and alpha", "pump power (uW)", "value", true, true,
                            {series("g2(0)", [](const PowerPoint &p) { return metric_value(p.metrics.g2_zero); }),
                             series("alpha", [](const PowerPoint &p) { return metric_value(p.metrics.alpha); })}}));
    report::write_text(
        dir / "car.svg",
        report::render_svg({"Coincidence-to-accidentals ratios", "pump power (uW)", "CAR", true, true,
                            {series("CAR_dtau", [](const PowerPoint &p) { return metric_value(p.metrics.car_dtau); }),
                             series("CAR_rep", [](const PowerPoint &p) { return metric_value(p.metrics.car_rep); }),
                             series("CAR_HOP", [](const PowerPoint &p) { return metric_value(p.metrics.car_hop); })}}));
    report::write_text(
        dir / "brightness.svg",
        report::render_svg({"Mean pairs per pulse", "pump power (uW)", "<n_pulse>", false, false,
                            {series("estimated", [](const PowerPoint &p) { return metric_value(p.metrics.mean_photons); }),
                             series("configured", [](const PowerPoint &p) { return p.mean_pairs; })}}));
}

void write_delay_scan(const std::filesystem::path &dir, const DelayScan &scan, bool plots) {
    report::write_text(dir / "delay_scan.csv", delay_scan_csv(scan));
    report::write_text(dir / "delay_summary.csv", delay_summary_csv(scan));
    if (!plots) {
        return;
    }
    report::PlotSpec spec{"Klyshko efficiency vs delay", "delay (ns)", "eta_K", false, false, {}};
    for (const auto &s : scan.summaries) {
        report::Series ser{num(s.power_uw) + " uW", {}, {}};
        for (const auto &p : scan.points) {
            if (p.power_uw == s.power_uw) {
                ser.x.push_back(p.delay_ns);
                ser.y.push_back(metric_value(p.klyshko));
            }
        }
        spec.series.push_back(std::move(ser));
    }
    report::write_text(dir / "delay_scan.svg", report::render_svg(spec));
}

void write_wdm_sweep(const std::filesystem::path &dir, const WdmSweep &w, bool plots) {
    report::write_text(dir / "wdm_sweep.csv", wdm_sweep_csv(w));
    report::write_text(dir / "wdm_model.json", wdm_model_json(w));
    if (!plots) {
        return;
    }
    report::Series es{"eta_s (original port)", {}, {}};
    report::Series ei{"eta_i (cross port)", {}, {}};
    report::Series ss{"S_s", {}, {}};
    report::Series si{"S_i", {}, {}};
    for (const auto &r : w.rows) {
        es.x.push_back(r.stem_length_um);
        es.y.push_back(r.eta_signal);
        ei.x.push_back(r.stem_length_um);
        ei.y.push_back(r.eta_idler);
        ss.x.push_back(r.stem_length_um);
        ss.y.push_back(r.signal_suppression.finite() ? r.signal_suppression.value : NAN);
        si.x.push_back(r.stem_length_um);
        si.y.push_back(r.idler_suppression.finite() ? r.idler_suppression.value : NAN);
    }
    report::write_text(dir / "wdm_fractions.svg",
                       report::render_svg({"WDM port fractions", "stem length (um)", "fraction", false, false,
                                           {es, ei}}));
    report::write_text(dir / "wdm_suppression.svg",
                       report::render_svg({"WDM suppression", "stem length (um)", "suppression (dB)", false, false,
                                           {ss, si}}));
}

void write_qpm_curves(const std::filesystem::path &dir, const QpmCurves &c, bool plots) {
    report::write_text(dir / "qpm_poling.csv", qpm_tuning_csv(c.poling, "poling_period_um"));
    report::write_text(dir / "qpm_temperature.csv", qpm_tuning_csv(c.temperature, "temperature_c"));
    report::write_text(dir / "qpm_spectrum.csv", qpm_spectrum_csv(c));
    if (!plots) {
        return;
    }
    auto tuning = [](std::span<const qpm::TuningPoint> pts) {
        report::Series s{"signal", {}, {}};
        for (const auto &p : pts) {
            if (p.solution) {
                s.x.push_back(p.sweep_value);
                s.y.push_back(p.solution->signal_nm);
            }
        }
        return s;
    };
    report::write_text(dir / "qpm_poling.svg",
                       report::render_svg({"Signal wavelength vs poling period", "poling period (um)",
                                           "signal wavelength (nm)", false, false, {tuning(c.poling)}}));
    report::write_text(dir / "qpm_temperature.svg",
                       report::render_svg({"Signal wavelength vs temperature", "temperature (C)",
                                           "signal wavelength (nm)", false, false, {tuning(c.temperature)}}));
    report::Series sp{"sinc^2", {}, {}, false};
    for (const auto &s : c.spectrum) {
        sp.x.push_back(s.signal_nm);
        sp.y.push_back(s.intensity);
    }
    report::write_text(dir / "qpm_spectrum.svg",
                       report::render_svg({"Phase-matching spectrum", "signal wavelength (nm)", "intensity", false,
                                           false, {sp}}));
}

}  // namespace pdcsim
