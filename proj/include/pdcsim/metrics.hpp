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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdcsim/counter.hpp"

namespace pdcsim {

/// Counts as doubles so the same formulas serve Monte Carlo totals and
/// oracle expectations (probability x slots).
struct TotalsView {
    double n_slots = 0.0;
    double trigger = 0.0;
    double idler1 = 0.0;
    double idler2 = 0.0;
    double triple = 0.0;

    static TotalsView of(const CountTotals &t);
    double doubles() const { return idler1 + idler2; }
    TotalsView scaled(double k) const { return {n_slots * k, trigger * k, idler1 * k, idler2 * k, triple * k}; }
};

enum class MetricStatus { ok, undefined, lower_bound };

const char *status_name(MetricStatus s);

struct Metric {
    double value = 0.0;
    double error = 0.0;
    MetricStatus status = MetricStatus::ok;
    double confidence = 0.0;  // for lower bounds

    static Metric undefined() { return {0.0, 0.0, MetricStatus::undefined, 0.0}; }
    bool ok() const { return status == MetricStatus::ok; }
    std::string str() const;
};

/// Confidence level attached to lower bounds from zero-count denominators.
inline constexpr double kBoundConfidence = 0.95;

/// alpha = R_Si R_c / (R_Id,1 R_Id,2).
Metric alpha(const TotalsView &t);
/// g2(0) = 4 R_Si R_c / (R_Id,1 + R_Id,2)^2.
Metric g2_zero(const TotalsView &t);
/// eta_K = (R_Id,1 + R_Id,2) / R_Si.
Metric klyshko(const TotalsView &t);
/// eta_H = eta_K / eta_Id. Throws DomainError if eta_Id <= 0.
Metric heralding(const TotalsView &t, double eta_id);
/// eta_K at zero delay over eta_K at a delay inside the same period.
Metric car_dtau(const TotalsView &aligned, const TotalsView &shifted);
/// Double-coincidence rate at offset 0 over the rate at offset m >= 1.
Metric car_rep(const TotalsView &aligned, const TotalsView &offset);
/// Double- over triple-coincidence rate, both at zero delay.
Metric car_hop(const TotalsView &aligned);
/// Mean generated pairs per pulse: R_Si / f divided by every signal-arm
/// transmission and the trigger efficiency.
Metric brightness(const TotalsView &aligned, std::span<const double> signal_transmissions, double eta_si,
                  double repetition_rate_hz);

struct MetricsInputs {
    TotalsView aligned;
    std::optional<TotalsView> shifted;  // same period, delay beyond the gate
    std::optional<TotalsView> offset;   // whole-period offset m >= 1
};

struct MetricsContext {
    double eta_id = 0.23;
    std::vector<double> signal_transmissions;
    double eta_si = 0.55;
    double repetition_rate_hz = 1e7;
};

struct MetricsReport {
    Metric alpha;
    Metric g2_zero;
    Metric klyshko;
    Metric heralding;
    Metric car_dtau;
    Metric car_rep;
    Metric car_hop;
    Metric mean_photons;
};

MetricsReport evaluate(const MetricsInputs &in, const MetricsContext &ctx);

/// Keeps the pooled values and replaces each error by the standard error of
/// the per-repeat values (sample std / sqrt(R)) when at least two repeats
/// give a defined value.
MetricsReport with_repeat_errors(MetricsReport pooled, std::span<const MetricsReport> repeats);

/// Column order: for each of alpha, g2_zero, eta_K, eta_H, car_dtau,
/// car_rep, car_hop, mean_photons: value, error, flag.
std::string metrics_csv_header();
std::string metrics_csv_fields(const MetricsReport &r);
std::string summary_text(const MetricsReport &r);

}  // namespace pdcsim
