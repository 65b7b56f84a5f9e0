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

#include "pdcsim/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

// Zero-count stand-in for lower bounds (95% one-sided Poisson limit).
constexpr double kZeroCount = 2.995732273553991;

// First-order Poisson error of prod(count_i^e_i). A zero count in a
// numerator leaves the value at zero; its error is then the value the
// metric would take with one count there.
// value = scale * prod(count^exponent), passed in already evaluated so that
// closed forms keep their exact rounding. First-order Poisson error; when a
// count is zero the error is the value that a single count would give.
Metric power_law(double value, double scale, std::initializer_list<std::pair<double, double>> terms) {
    double one_count = scale;
    double rel2 = 0.0;
    bool zero = false;
    for (auto [count, exponent] : terms) {
        one_count *= std::pow(std::max(count, 1.0), exponent);
        if (count > 0.0) {
            rel2 += exponent * exponent / count;
        } else {
            zero = true;
        }
    }
    Metric m;
    m.value = value;
    m.error = zero ? std::abs(one_count) : std::abs(value) * std::sqrt(rel2);
    return m;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

const std::array<std::pair<const char *, Metric MetricsReport::*>, 8> kFields{{
    {"alpha", &MetricsReport::alpha},
    {"g2_zero", &MetricsReport::g2_zero},
    {"eta_K", &MetricsReport::klyshko},
    {"eta_H", &MetricsReport::heralding},
    {"car_dtau", &MetricsReport::car_dtau},
    {"car_rep", &MetricsReport::car_rep},
    {"car_hop", &MetricsReport::car_hop},
    {"mean_photons", &MetricsReport::mean_photons},
}};

}  // namespace

TotalsView TotalsView::of(const CountTotals &t) {
    return {static_cast<double>(t.n_slots), static_cast<double>(t.trigger), static_cast<double>(t.idler1),
            static_cast<double>(t.idler2), static_cast<double>(t.triple)};
}

const char *status_name(MetricStatus s) {
    switch (s) {
        case MetricStatus::ok:
            return "ok";
        case MetricStatus::undefined:
            return "undefined";
        case MetricStatus::lower_bound:
            return "lower_bound";
    }
    return "?";
}

std::string Metric::str() const {
    switch (status) {
        case MetricStatus::undefined:
            return "undefined";
        case MetricStatus::lower_bound:
            return ">= " + fmt(value) + " (" + fmt(100.0 * confidence) + "% CL)";
        case MetricStatus::ok:
            break;
    }
    return fmt(value) + " +/- " + fmt(error);
}

Metric alpha(const TotalsView &t) {
    if (!(t.idler1 > 0.0 && t.idler2 > 0.0)) {
        return Metric::undefined();
    }
    return power_law(t.trigger * t.triple / (t.idler1 * t.idler2), 1.0, {{t.trigger, 1}, {t.triple, 1}, {t.idler1, -1}, {t.idler2, -1}});
}

Metric g2_zero(const TotalsView &t) {
    const double d = t.doubles();
    if (!(d > 0.0)) {
        return Metric::undefined();
    }
    return power_law(4.0 * t.trigger * t.triple / (d * d), 4.0, {{t.trigger, 1}, {t.triple, 1}, {d, -2}});
}

Metric klyshko(const TotalsView &t) {
    if (!(t.trigger > 0.0)) {
        return Metric::undefined();
    }
    const double d = t.doubles();
    return power_law(d / t.trigger, 1.0, {{d, 1}, {t.trigger, -1}});
}

Metric heralding(const TotalsView &t, double eta_id) {
    if (!(eta_id > 0.0)) {
        throw DomainError("heralding efficiency needs an idler detector efficiency > 0");
    }
    Metric k = klyshko(t);
    if (!k.ok()) {
        return k;
    }
    k.value /= eta_id;
    k.error /= eta_id;
    return k;
}

Metric car_dtau(const TotalsView &aligned, const TotalsView &shifted) {
    if (!(aligned.trigger > 0.0 && shifted.trigger > 0.0)) {
        return Metric::undefined();
    }
    const double d0 = aligned.doubles();
    const double ds = shifted.doubles();
    const double k0 = d0 / aligned.trigger;
    if (!(ds > 0.0)) {
        if (!(d0 > 0.0)) {
            return Metric::undefined();
        }
        return {k0 / (kZeroCount / shifted.trigger), 0.0, MetricStatus::lower_bound, kBoundConfidence};
    }
    return power_law(k0 / (ds / shifted.trigger), 1.0, {{d0, 1}, {aligned.trigger, -1}, {ds, -1}, {shifted.trigger, 1}});
}

Metric car_rep(const TotalsView &aligned, const TotalsView &offset) {
    if (!(aligned.n_slots > 0.0 && offset.n_slots > 0.0)) {
        return Metric::undefined();
    }
    const double d0 = aligned.doubles();
    const double dm = offset.doubles();
    const double r0 = d0 / aligned.n_slots;
    if (!(dm > 0.0)) {
        if (!(d0 > 0.0)) {
            return Metric::undefined();
        }
        return {r0 / (kZeroCount / offset.n_slots), 0.0, MetricStatus::lower_bound, kBoundConfidence};
    }
    return power_law(r0 / (dm / offset.n_slots), offset.n_slots / aligned.n_slots, {{d0, 1}, {dm, -1}});
}

Metric car_hop(const TotalsView &aligned) {
    const double d = aligned.doubles();
    if (!(aligned.triple > 0.0)) {
        if (!(d > 0.0)) {
            return Metric::undefined();
        }
        return {d / kZeroCount, 0.0, MetricStatus::lower_bound, kBoundConfidence};
    }
    return power_law(d / aligned.triple, 1.0, {{d, 1}, {aligned.triple, -1}});
}

Metric brightness(const TotalsView &aligned, std::span<const double> transmissions, double eta_si, double f) {
    double t = eta_si;
    for (double x : transmissions) {
        t *= x;
    }
    if (!(t > 0.0)) {
        throw DomainError("brightness needs non-zero signal-arm transmissions and trigger efficiency");
    }
    if (!(f > 0.0)) {
        throw DomainError("brightness needs a positive repetition rate");
    }
    if (!(aligned.n_slots > 0.0)) {
        return Metric::undefined();
    }
    const double r_si = aligned.trigger / aligned.n_slots * f;
    Metric m;
    m.value = r_si / f / t;
    m.error = (aligned.trigger > 0.0 ? std::sqrt(aligned.trigger) : 1.0) / aligned.n_slots / t;
    return m;
}

MetricsReport evaluate(const MetricsInputs &in, const MetricsContext &ctx) {
    MetricsReport r;
    r.alpha = alpha(in.aligned);
    r.g2_zero = g2_zero(in.aligned);
    r.klyshko = klyshko(in.aligned);
    r.heralding = heralding(in.aligned, ctx.eta_id);
    r.car_dtau = in.shifted ? car_dtau(in.aligned, *in.shifted) : Metric::undefined();
    r.car_rep = in.offset ? car_rep(in.aligned, *in.offset) : Metric::undefined();
    r.car_hop = car_hop(in.aligned);
    r.mean_photons = brightness(in.aligned, ctx.signal_transmissions, ctx.eta_si, ctx.repetition_rate_hz);
    return r;
}

MetricsReport with_repeat_errors(MetricsReport pooled, std::span<const MetricsReport> repeats) {
    for (const auto &[name, field] : kFields) {
        (void)name;
        double sum = 0.0;
        double sum2 = 0.0;
        int n = 0;
        for (const auto &rep : repeats) {
            const Metric &m = rep.*field;
            if (m.ok()) {
                sum += m.value;
                sum2 += m.value * m.value;
                ++n;
            }
        }
        Metric &out = pooled.*field;
        if (n >= 2 && out.ok()) {
            const double mean = sum / n;
            const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1));
            out.error = std::sqrt(var / n);
        }
    }
    return pooled;
}

std::string metrics_csv_header() {
    std::string s;
    for (const auto &[name, field] : kFields) {
        (void)field;
        if (!s.empty()) {
            s += ',';
        }
        s += std::string(name) + ',' + name + "_err," + name + "_flag";
    }
    return s;
}

std::string metrics_csv_fields(const MetricsReport &r) {
    std::string s;
    for (const auto &[name, field] : kFields) {
        (void)name;
        const Metric &m = r.*field;
        if (!s.empty()) {
            s += ',';
        }
        if (m.status == MetricStatus::undefined) {
            s += ",,undefined";
        } else {
            s += fmt(m.value) + ',' + fmt(m.error) + ',' + status_name(m.status);
        }
    }
    return s;
}

std::string summary_text(const MetricsReport &r) {
    std::ostringstream os;
    for (const auto &[name, field] : kFields) {
        char label[16];
        std::snprintf(label, sizeof label, "%-13s", name);
        os << label << (r.*field).str() << '\n';
    }
    return os.str();
}

}  // namespace pdcsim
