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
#include <vector>

#include "pdcsim/detect.hpp"
#include "pdcsim/metrics.hpp"
#include "pdcsim/source.hpp"

namespace pdcsim {

struct OracleConfig {
    PairNumberDistribution distribution{PairLaw::thermal, 0.0};
    /// Replaces the distribution's table when set (need not be a named law).
    std::optional<std::vector<double>> pmf;
    double signal_efficiency = 1.0;  // channel x trigger efficiency
    double idler_efficiency = 1.0;   // channel x idler detector efficiency
    double splitter_ratio = 0.5;
    NoiseProbabilities noise;
    double gate_overlap = 1.0;
};

std::vector<std::string> validate(const OracleConfig &cfg);

/// Exact per-slot probabilities (to truncation).
struct SlotProbabilities {
    double trigger = 0.0;
    double trig_id1 = 0.0;
    double trig_id2 = 0.0;
    double triple = 0.0;
    double idler1_single = 0.0;  // unconditioned idler click marginals
    double idler2_single = 0.0;
    double idler_both_single = 0.0;
    double tail_mass = 0.0;  // probability mass beyond the cutoff
};

/// Enumerates pair number n and the number j of detected idler photons,
/// then splits j between the ports.
SlotProbabilities expected_rates(const OracleConfig &cfg);

/// Same quantities through the probability generating function of the
/// untruncated law, by inclusion-exclusion over "no click" events. Ignores
/// `pmf`.
SlotProbabilities generating_function_rates(const OracleConfig &cfg);

struct OffsetProbabilities {
    double trig_id1 = 0.0;
    double trig_id2 = 0.0;
    double triple = 0.0;
};

/// Trigger and idlers from different pulses are independent.
OffsetProbabilities expected_offset_rates(const SlotProbabilities &p);
OffsetProbabilities expected_offset_rates(const OracleConfig &cfg);

TotalsView expected_totals(const SlotProbabilities &p, double n_slots);
TotalsView expected_totals(const SlotProbabilities &trigger_marginal, const OffsetProbabilities &p,
                           double n_slots);

}  // namespace pdcsim
