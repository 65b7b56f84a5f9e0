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

#include "pdcsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

using json = nlohmann::json;

std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

std::string config_error_message(const std::vector<std::string> &diags) {
    std::string s = "invalid configuration:";
    for (const auto &d : diags) {
        s += "\n  - " + d;
    }
    return s;
}

// Collects diagnostics while walking the document; never throws.
class Reader {
   public:
    std::vector<std::string> diags;

    void keys(const json &obj, const std::string &path, std::initializer_list<const char *> allowed) {
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!ok.count(it.key())) {
                diags.push_back(join(path, it.key()) + ": unknown key");
            }
        }
    }

    const json *object(const json &obj, const std::string &path, const char *key) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return nullptr;
        }
        if (!it->is_object()) {
            diags.push_back(join(path, key) + ": expected an object");
            return nullptr;
        }
        return &*it;
    }

    void number(const json &obj, const std::string &path, const char *key, double &out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        if (!it->is_number()) {
            diags.push_back(join(path, key) + ": expected a number");
            return;
        }
        out = it->get<double>();
    }

    template <class Int>
    void integer(const json &obj, const std::string &path, const char *key, Int &out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        if (it->is_number_float()) {
            double v = it->get<double>();
            if (v >= 0.0 && v == std::floor(v) && v < 1.8e19) {
                out = static_cast<Int>(v);
                return;
            }
        }
        if (!it->is_number_integer()) {
            diags.push_back(join(path, key) + ": expected a non-negative integer");
            return;
        }
        if (it->is_number_unsigned()) {
            out = static_cast<Int>(it->get<std::uint64_t>());
            return;
        }
        long long v = it->get<long long>();
        if (v < 0) {
            diags.push_back(join(path, key) + ": expected a non-negative integer");
            return;
        }
        out = static_cast<Int>(v);
    }

    void boolean(const json &obj, const std::string &path, const char *key, bool &out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        if (!it->is_boolean()) {
            diags.push_back(join(path, key) + ": expected true or false");
            return;
        }
        out = it->get<bool>();
    }

    void string(const json &obj, const std::string &path, const char *key, std::string &out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        if (!it->is_string()) {
            diags.push_back(join(path, key) + ": expected a string");
            return;
        }
        out = it->get<std::string>();
    }

    template <std::size_t N>
    void numbers(const json &obj, const std::string &path, const char *key, std::array<double, N> &out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        if (!it->is_array() || it->size() != N) {
            diags.push_back(join(path, key) + ": expected an array of " + std::to_string(N) + " numbers");
            return;
        }
        for (std::size_t i = 0; i < N; ++i) {
            if (!(*it)[i].is_number()) {
                diags.push_back(join(path, key) + "[" + std::to_string(i) + "]: expected a number");
                return;
            }
            out[i] = (*it)[i].get<double>();
        }
    }

    void range(const json &obj, const std::string &path, const char *key, qpm::ValueRange &out) {
        std::array<double, 2> v{out.min, out.max};
        numbers(obj, path, key, v);
        out = {v[0], v[1]};
    }

    /// A list of numbers, or {"start", "stop", "step"} expanded inclusively.
    void grid(const json &obj, const std::string &path, const char *key, std::vector<double> &out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        const std::string p = join(path, key);
        if (it->is_array()) {
            std::vector<double> v;
            for (std::size_t i = 0; i < it->size(); ++i) {
                if (!(*it)[i].is_number()) {
                    diags.push_back(p + "[" + std::to_string(i) + "]: expected a number");
                    return;
                }
                v.push_back((*it)[i].get<double>());
            }
            out = std::move(v);
            return;
        }
        if (it->is_object()) {
            keys(*it, p, {"start", "stop", "step"});
            double start = NAN, stop = NAN, step = NAN;
            number(*it, p, "start", start);
            number(*it, p, "stop", stop);
            number(*it, p, "step", step);
            if (!(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step))) {
                diags.push_back(p + ": grid needs numeric start, stop and step");
                return;
            }
            if (!(step > 0.0) || stop < start) {
                diags.push_back(p + ": grid needs step > 0 and stop >= start");
                return;
            }
            const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
            if (n > 1000000) {
                diags.push_back(p + ": grid has more than a million points");
                return;
            }
            out.clear();
            for (long i = 0; i <= n; ++i) {
                out.push_back(start + static_cast<double>(i) * step);
            }
            return;
        }
        diags.push_back(p + ": expected a list of numbers or a {start, stop, step} grid");
    }

    void offsets(const json &obj, const std::string &path, const char *key, std::vector<long> &out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        if (!it->is_array()) {
            diags.push_back(join(path, key) + ": expected a list of integers");
            return;
        }
        std::vector<long> v;
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_number_integer()) {
                diags.push_back(join(path, key) + "[" + std::to_string(i) + "]: expected an integer");
                return;
            }
            v.push_back((*it)[i].get<long>());
        }
        out = std::move(v);
    }

    void channel(const json &obj, const std::string &path, const char *key, OpticalChannel &out) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            return;
        }
        const std::string p = join(path, key);
        if (!it->is_array()) {
            diags.push_back(p + ": expected a list of {name, transmission} stages");
            return;
        }
        std::vector<OpticalChannel::Stage> stages;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json &s = (*it)[i];
            const std::string sp = p + "[" + std::to_string(i) + "]";
            if (!s.is_object()) {
                diags.push_back(sp + ": expected an object");
                continue;
            }
            keys(s, sp, {"name", "transmission"});
            OpticalChannel::Stage st;
            st.transmission = NAN;
            string(s, sp, "name", st.name);
            number(s, sp, "transmission", st.transmission);
            if (st.name.empty()) {
                diags.push_back(sp + ".name: required");
            }
            if (!(st.transmission >= 0.0 && st.transmission <= 1.0)) {
                diags.push_back(sp + ".transmission: must be in [0, 1]");
                continue;
            }
            stages.push_back(st);
        }
        out = OpticalChannel(std::move(stages));
    }

    void detector(const json &obj, const std::string &path, const char *key, DetectorModel &out) {
        const json *d = object(obj, path, key);
        if (!d) {
            return;
        }
        const std::string p = join(path, key);
        keys(*d, p, {"efficiency", "dark_rate_hz", "dead_time_ns", "gate_fwhm_ns", "nominal_gate_ns", "mode"});
        number(*d, p, "efficiency", out.efficiency);
        number(*d, p, "dark_rate_hz", out.dark_rate_hz);
        number(*d, p, "dead_time_ns", out.dead_time_ns);
        number(*d, p, "gate_fwhm_ns", out.gate_fwhm_ns);
        number(*d, p, "nominal_gate_ns", out.nominal_gate_ns);
        std::string mode;
        string(*d, p, "mode", mode);
        if (mode == "gated") {
            out.mode = DetectorMode::gated;
        } else if (mode == "free_running") {
            out.mode = DetectorMode::free_running;
        } else if (!mode.empty()) {
            diags.push_back(p + ".mode: expected gated or free_running");
        }
    }
};

void read_document(Reader &r, const json &doc, ExperimentConfig &c) {
    if (!doc.is_object()) {
        r.diags.push_back("top level: expected an object");
        return;
    }
    r.keys(doc, "",
           {"schema_version", "master_seed", "n_pulses", "repeats", "workers", "output_dir", "dispersion", "qpm",
            "coupler", "source", "detectors", "background", "calibration", "sweeps"});
    r.integer(doc, "", "schema_version", c.schema_version);
    r.integer(doc, "", "master_seed", c.master_seed);
    r.integer(doc, "", "n_pulses", c.n_pulses);
    r.integer(doc, "", "repeats", c.repeats);
    r.integer(doc, "", "workers", c.workers);
    r.string(doc, "", "output_dir", c.output_dir);

    if (const json *d = r.object(doc, "", "dispersion")) {
        const std::string p = "dispersion";
        r.keys(*d, p, {"sellmeier", "effective_index_offsets", "valid_wavelength_nm", "valid_temperature_c"});
        if (const json *s = r.object(*d, p, "sellmeier")) {
            const std::string sp = p + ".sellmeier";
            r.keys(*s, sp, {"a", "b", "reference_temperature_c"});
            r.numbers(*s, sp, "a", c.dispersion.sellmeier.a);
            r.numbers(*s, sp, "b", c.dispersion.sellmeier.b);
            r.number(*s, sp, "reference_temperature_c", c.dispersion.sellmeier.reference_temperature_c);
        }
        if (const json *o = r.object(*d, p, "effective_index_offsets")) {
            const std::string op = p + ".effective_index_offsets";
            r.keys(*o, op, {"pump", "signal", "idler"});
            r.number(*o, op, "pump", c.dispersion.offsets[0]);
            r.number(*o, op, "signal", c.dispersion.offsets[1]);
            r.number(*o, op, "idler", c.dispersion.offsets[2]);
        }
        r.range(*d, p, "valid_wavelength_nm", c.dispersion.wavelength_nm);
        r.range(*d, p, "valid_temperature_c", c.dispersion.temperature_c);
    }

    if (const json *q = r.object(doc, "", "qpm")) {
        const std::string p = "qpm";
        r.keys(*q, p,
               {"pump_wavelength_nm", "poling_period_um", "temperature_c", "interaction_length_mm",
                "calibration_signal_nm", "calibration_fwhm_nm"});
        r.number(*q, p, "pump_wavelength_nm", c.qpm.pump_wavelength_nm);
        r.number(*q, p, "poling_period_um", c.qpm.poling_period_um);
        r.number(*q, p, "temperature_c", c.qpm.temperature_c);
        r.number(*q, p, "interaction_length_mm", c.qpm.interaction_length_mm);
        r.number(*q, p, "calibration_signal_nm", c.qpm_calibration.signal_nm);
        if (q->contains("calibration_fwhm_nm")) {
            double w = 0.0;
            r.number(*q, p, "calibration_fwhm_nm", w);
            c.qpm_calibration.fwhm_nm = w;
        }
    }

    if (const json *w = r.object(doc, "", "coupler")) {
        const std::string p = "coupler";
        r.keys(*w, p,
               {"stem_length_um", "center_gap_um", "port_gap_um", "bend_length_um", "with_bends",
                "band_tolerance_nm", "fallback_decay_um", "measurements"});
        r.number(*w, p, "stem_length_um", c.coupler.stem_length_um);
        r.number(*w, p, "center_gap_um", c.coupler.center_gap_um);
        r.number(*w, p, "port_gap_um", c.coupler.port_gap_um);
        r.number(*w, p, "bend_length_um", c.coupler.bend_length_um);
        r.boolean(*w, p, "with_bends", c.coupler.with_bends);
        r.number(*w, p, "band_tolerance_nm", c.coupler_band_tolerance_nm);
        r.number(*w, p, "fallback_decay_um", c.coupler_fallback_decay_um);
        if (auto it = w->find("measurements"); it != w->end()) {
            if (!it->is_array()) {
                r.diags.push_back("coupler.measurements: expected a list");
            } else {
                c.coupler_measurements.clear();
                for (std::size_t i = 0; i < it->size(); ++i) {
                    const json &m = (*it)[i];
                    const std::string mp = p + ".measurements[" + std::to_string(i) + "]";
                    if (!m.is_object()) {
                        r.diags.push_back(mp + ": expected an object");
                        continue;
                    }
                    r.keys(m, mp, {"stem_length_um", "wavelength_nm", "cross_fraction"});
                    wdm::CouplerMeasurement cm{NAN, NAN, NAN};
                    r.number(m, mp, "stem_length_um", cm.stem_length_um);
                    r.number(m, mp, "wavelength_nm", cm.wavelength_nm);
                    r.number(m, mp, "cross_fraction", cm.cross_fraction);
                    if (!(cm.stem_length_um >= 0.0)) {
                        r.diags.push_back(mp + ".stem_length_um: must be >= 0");
                    }
                    if (!(cm.wavelength_nm > 0.0)) {
                        r.diags.push_back(mp + ".wavelength_nm: must be > 0");
                    }
                    if (!(cm.cross_fraction >= 0.0 && cm.cross_fraction <= 1.0)) {
                        r.diags.push_back(mp + ".cross_fraction: must be in [0, 1]");
                    }
                    c.coupler_measurements.push_back(cm);
                }
            }
        }
    }

    if (const json *s = r.object(doc, "", "source")) {
        const std::string p = "source";
        r.keys(*s, p,
               {"law", "n_max", "slope_pairs_per_uw", "repetition_rate_hz", "splitter_ratio", "signal_channel",
                "idler_channel"});
        std::string law;
        r.string(*s, p, "law", law);
        if (law == "thermal") {
            c.law = PairLaw::thermal;
        } else if (law == "poisson") {
            c.law = PairLaw::poisson;
        } else if (!law.empty()) {
            r.diags.push_back("source.law: expected thermal or poisson");
        }
        r.integer(*s, p, "n_max", c.n_max);
        r.number(*s, p, "slope_pairs_per_uw", c.pump.slope_per_uw);
        r.number(*s, p, "repetition_rate_hz", c.pump.repetition_rate_hz);
        r.number(*s, p, "splitter_ratio", c.splitter_ratio);
        r.channel(*s, p, "signal_channel", c.signal_channel);
        r.channel(*s, p, "idler_channel", c.idler_channel);
    }

    if (const json *d = r.object(doc, "", "detectors")) {
        const std::string p = "detectors";
        r.keys(*d, p, {"trigger", "idler1", "idler2", "dead_time_enabled"});
        r.detector(*d, p, "trigger", c.detectors.trigger);
        r.detector(*d, p, "idler1", c.detectors.idler1);
        r.detector(*d, p, "idler2", c.detectors.idler2);
        r.boolean(*d, p, "dead_time_enabled", c.dead_time);
    }

    if (const json *b = r.object(doc, "", "background")) {
        const std::string p = "background";
        r.keys(*b, p, {"trigger_hz", "trigger_per_uw", "idler_hz", "idler_per_uw"});
        r.number(*b, p, "trigger_hz", c.background.trigger_hz);
        r.number(*b, p, "trigger_per_uw", c.background.trigger_per_uw);
        r.number(*b, p, "idler_hz", c.background.idler_hz);
        r.number(*b, p, "idler_per_uw", c.background.idler_per_uw);
    }

    if (const json *t = r.object(doc, "", "calibration")) {
        const std::string p = "calibration";
        auto &k = c.calibration;
        r.keys(*t, p,
               {"heralding", "heralding_power_uw", "trigger_rate_hz", "trigger_rate_power_uw", "car_dtau_low",
                "car_dtau_low_power_uw", "car_dtau_high", "car_dtau_high_power_uw", "residual_stage"});
        r.number(*t, p, "heralding", k.heralding);
        r.number(*t, p, "heralding_power_uw", k.heralding_power_uw);
        r.number(*t, p, "trigger_rate_hz", k.trigger_rate_hz);
        r.number(*t, p, "trigger_rate_power_uw", k.trigger_rate_power_uw);
        r.number(*t, p, "car_dtau_low", k.car_dtau_low);
        r.number(*t, p, "car_dtau_low_power_uw", k.car_dtau_low_power_uw);
        r.number(*t, p, "car_dtau_high", k.car_dtau_high);
        r.number(*t, p, "car_dtau_high_power_uw", k.car_dtau_high_power_uw);
        r.string(*t, p, "residual_stage", k.residual_stage);
    }

    if (const json *s = r.object(doc, "", "sweeps")) {
        const std::string p = "sweeps";
        r.keys(*s, p, {"power", "delay", "stem_length_um", "qpm"});
        if (const json *pw = r.object(*s, p, "power")) {
            const std::string pp = p + ".power";
            r.keys(*pw, pp, {"powers_uw", "rep_offsets"});
            r.grid(*pw, pp, "powers_uw", c.power_sweep.powers_uw);
            r.offsets(*pw, pp, "rep_offsets", c.power_sweep.rep_offsets);
        }
        if (const json *dl = r.object(*s, p, "delay")) {
            const std::string dp = p + ".delay";
            r.keys(*dl, dp, {"delays_ns", "powers_uw", "far_delay_ns", "far_delay_pulses"});
            r.grid(*dl, dp, "delays_ns", c.delay_scan.delays_ns);
            r.grid(*dl, dp, "powers_uw", c.delay_scan.powers_uw);
            r.number(*dl, dp, "far_delay_ns", c.delay_scan.far_delay_ns);
            r.integer(*dl, dp, "far_delay_pulses", c.delay_scan.far_delay_pulses);
        }
        r.grid(*s, p, "stem_length_um", c.stem_lengths_um);
        if (const json *q = r.object(*s, p, "qpm")) {
            const std::string qp = p + ".qpm";
            r.keys(*q, qp,
                   {"poling_period_um", "temperature_c", "spectrum_half_width_nm", "spectrum_step_nm",
                    "search_window_nm"});
            r.grid(*q, qp, "poling_period_um", c.qpm_sweep.poling_periods_um);
            r.grid(*q, qp, "temperature_c", c.qpm_sweep.temperatures_c);
            r.number(*q, qp, "spectrum_half_width_nm", c.qpm_sweep.spectrum_half_width_nm);
            r.number(*q, qp, "spectrum_step_nm", c.qpm_sweep.spectrum_step_nm);
            std::array<double, 2> win{c.qpm_sweep.window.lo_nm, c.qpm_sweep.window.hi_nm};
            r.numbers(*q, qp, "search_window_nm", win);
            c.qpm_sweep.window = {win[0], win[1]};
        }
    }
}

void prefix(std::vector<std::string> &out, const std::vector<std::string> &in, const std::string &p) {
    for (const auto &s : in) {
        out.push_back(p + s);
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(config_error_message(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::vector<std::string> validate(const ExperimentConfig &c) {
    std::vector<std::string> out;
    if (c.schema_version != 1) {
        out.push_back("schema_version: only version 1 is supported");
    }
    if (c.n_pulses == 0) {
        out.push_back("n_pulses: must be > 0");
    }
    if (c.repeats == 0) {
        out.push_back("repeats: must be >= 1");
    }
    if (c.output_dir.empty()) {
        out.push_back("output_dir: must not be empty");
    }
    auto dispersion_errs = qpm::validate(c.dispersion);
    prefix(out, dispersion_errs, "");
    if (dispersion_errs.empty()) {
        prefix(out, qpm::validate(c.qpm, c.dispersion), "");
    }
    if (!(c.qpm_calibration.signal_nm > c.qpm.pump_wavelength_nm)) {
        out.push_back("qpm.calibration_signal_nm: must exceed the pump wavelength");
    }
    if (c.qpm_calibration.fwhm_nm && !(*c.qpm_calibration.fwhm_nm > 0.0)) {
        out.push_back("qpm.calibration_fwhm_nm: must be > 0");
    }
    prefix(out, wdm::validate(c.coupler), "");
    if (!(c.coupler_band_tolerance_nm > 0.0)) {
        out.push_back("coupler.band_tolerance_nm: must be > 0");
    }
    if (!(c.coupler_fallback_decay_um > 0.0)) {
        out.push_back("coupler.fallback_decay_um: must be > 0");
    }
    if (!c.coupler_measurements.empty()) {
        try {
            (void)wdm::fit_beat_model(c.coupler_measurements, c.coupler, c.coupler_fallback_decay_um);
        } catch (const std::exception &e) {
            out.push_back(std::string("coupler.measurements: ") + e.what());
        }
    }
    if (c.n_max != 0 && c.n_max < PairNumberDistribution::kMinCutoff) {
        out.push_back("source.n_max: must be 0 (automatic) or >= 8");
    }
    if (!(c.pump.slope_per_uw > 0.0) || !std::isfinite(c.pump.slope_per_uw)) {
        out.push_back("source.slope_pairs_per_uw: must be > 0");
    }
    if (!(c.pump.repetition_rate_hz > 0.0) || !std::isfinite(c.pump.repetition_rate_hz)) {
        out.push_back("source.repetition_rate_hz: must be > 0");
    }
    if (!(c.splitter_ratio >= 0.0 && c.splitter_ratio <= 1.0)) {
        out.push_back("source.splitter_ratio: must be in [0, 1]");
    }
    prefix(out, validate(c.signal_channel, "source.signal_channel"), "");
    prefix(out, validate(c.idler_channel, "source.idler_channel"), "");
    prefix(out, validate(c.detectors.trigger, "detectors.trigger"), "");
    prefix(out, validate(c.detectors.idler1, "detectors.idler1"), "");
    prefix(out, validate(c.detectors.idler2, "detectors.idler2"), "");
    if (!(c.detectors.idler1.efficiency > 0.0 && c.detectors.idler2.efficiency > 0.0)) {
        out.push_back("detectors.idler1/idler2.efficiency: must be > 0 for heralding efficiency");
    }
    prefix(out, validate(c.background), "");
    const auto &k = c.calibration;
    for (double v : {k.heralding, k.heralding_power_uw, k.trigger_rate_hz, k.trigger_rate_power_uw, k.car_dtau_low,
                     k.car_dtau_low_power_uw, k.car_dtau_high, k.car_dtau_high_power_uw}) {
        if (!(v > 0.0)) {
            out.push_back("calibration: every target and power must be > 0");
            break;
        }
    }
    auto non_negative = [&](const std::vector<double> &v, const char *name) {
        for (double x : v) {
            if (!(x >= 0.0) || !std::isfinite(x)) {
                out.push_back(std::string(name) + ": values must be finite and >= 0");
                return;
            }
        }
    };
    non_negative(c.power_sweep.powers_uw, "sweeps.power.powers_uw");
    for (long m : c.power_sweep.rep_offsets) {
        if (m < 1) {
            out.push_back("sweeps.power.rep_offsets: offsets must be >= 1");
            break;
        }
    }
    non_negative(c.delay_scan.powers_uw, "sweeps.delay.powers_uw");
    if (!c.delay_scan.delays_ns.empty()) {
        auto [lo, hi] = std::minmax_element(c.delay_scan.delays_ns.begin(), c.delay_scan.delays_ns.end());
        if (*lo > -2.0 || *hi < 2.0) {
            out.push_back("sweeps.delay.delays_ns: grid must cover at least -2 ns to +2 ns");
        }
    }
    const double period = c.pump.repetition_rate_hz > 0.0 ? c.repetition_period_ns() : 0.0;
    if (!(std::abs(c.delay_scan.far_delay_ns) > 2.0 * c.detectors.idler1.gate_fwhm_ns &&
          std::abs(c.delay_scan.far_delay_ns) <= 0.5 * period)) {
        out.push_back("sweeps.delay.far_delay_ns: must lie beyond twice the gate width and within half a period");
    }
    non_negative(c.stem_lengths_um, "sweeps.stem_length_um");
    for (const auto &[v, name] : {std::pair{&c.qpm_sweep.poling_periods_um, "sweeps.qpm.poling_period_um"},
                                  std::pair{&c.qpm_sweep.temperatures_c, "sweeps.qpm.temperature_c"}}) {
        for (double x : *v) {
            if (!std::isfinite(x) || !(x > 0.0)) {
                out.push_back(std::string(name) + ": values must be finite and > 0");
                break;
            }
        }
    }
    if (!(c.qpm_sweep.spectrum_half_width_nm > 0.0 && c.qpm_sweep.spectrum_step_nm > 0.0 &&
          c.qpm_sweep.spectrum_step_nm < c.qpm_sweep.spectrum_half_width_nm)) {
        out.push_back("sweeps.qpm: need 0 < spectrum_step_nm < spectrum_half_width_nm");
    }
    if (!(c.qpm_sweep.window.hi_nm > c.qpm_sweep.window.lo_nm && c.qpm_sweep.window.lo_nm > 0.0)) {
        out.push_back("sweeps.qpm.search_window_nm: must be an increasing positive interval");
    }
    return out;
}

ExperimentConfig parse_config(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error &e) {
        throw ConfigError({std::string("syntax: ") + e.what()});
    }
    ExperimentConfig c;
    Reader r;
    read_document(r, doc, c);
    auto errs = validate(c);
    r.diags.insert(r.diags.end(), errs.begin(), errs.end());
    if (!r.diags.empty()) {
        throw ConfigError(std::move(r.diags));
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError({"cannot read config file " + path.string()});
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace pdcsim
