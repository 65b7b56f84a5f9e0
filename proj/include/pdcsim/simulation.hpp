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
#include <string>
#include <vector>

#include "pdcsim/counter.hpp"
#include "pdcsim/detect.hpp"
#include "pdcsim/oracle.hpp"
#include "pdcsim/source.hpp"

namespace pdcsim {

/// Everything needed to simulate one operating point.
struct SimulationSetup {
    PairNumberDistribution pairs{PairLaw::thermal, 0.0};
    OpticalChannel signal_channel;
    OpticalChannel idler_channel;
    double splitter_ratio = 0.5;
    DetectorSet detectors;
    BackgroundRates background;
    DelaySetting delay;
    bool dead_time = true;
};

std::vector<std::string> validate(const SimulationSetup &setup);

/// Probabilities of the oracle for the same operating point (dead time is
/// outside the oracle's scope and ignored).
OracleConfig oracle_config(const SimulationSetup &setup);

struct RunOptions {
    std::uint64_t n_pulses = 10'000'000;
    std::uint64_t master_seed = 1;
    /// Stream path below the master seed (sweep point, repeat, ...).
    std::vector<std::uint64_t> tags;
    /// Worker threads; 0 means hardware concurrency. Never changes results.
    unsigned workers = 1;
    /// Whole-period offsets counted on top of the delay's own offset.
    std::vector<long> offsets{0};
    std::uint64_t batch_slots = std::uint64_t{1} << 18;
    /// When set, receives every clicked slot after dead time.
    std::vector<PulseSlotRecord> *records = nullptr;
};

struct RunResult {
    std::vector<CountTotals> totals;  // one per entry of RunOptions::offsets
    std::uint64_t clicked_slots = 0;
};

/// Event-skipping engine: geometric jumps over slots in which nothing
/// happens (no pair, no noise count), exact sampling of the rest. Batches
/// draw from substreams (tags..., batch) and are generated in parallel,
/// then passed in slot order through dead time and the counter.
RunResult simulate(const SimulationSetup &setup, const RunOptions &options);

/// Plain slot-by-slot simulation, single threaded. Statistically identical
/// to simulate() but consumes its random stream differently.
RunResult simulate_reference(const SimulationSetup &setup, const RunOptions &options);

}  // namespace pdcsim
