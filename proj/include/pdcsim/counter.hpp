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
#include <deque>
#include <iosfwd>
#include <span>
#include <vector>

namespace pdcsim {

/// Clicks in one pulse slot. Runs store only slots with at least one click.
struct PulseSlotRecord {
    std::uint64_t slot = 0;
    bool trigger = false;
    bool idler1 = false;
    bool idler2 = false;
    bool operator==(const PulseSlotRecord &) const = default;
};

/// Trigger-conditioned counts at slot offset m: `idlerK` counts slots s with
/// a trigger at s and an idler-K click at s + m; `triple` needs both idlers.
struct CountTotals {
    std::uint64_t n_slots = 0;
    std::uint64_t trigger = 0;
    std::uint64_t idler1 = 0;
    std::uint64_t idler2 = 0;
    std::uint64_t triple = 0;
    long slot_offset = 0;
    double sub_slot_delay_ns = 0.0;

    /// Sum of counts and slots; offsets and delays must agree.
    CountTotals &operator+=(const CountTotals &other);
    bool operator==(const CountTotals &) const = default;

    /// R_Id,k <= R_Si and R_c <= min(R_Id,1, R_Id,2).
    bool hierarchy_holds() const;
};

/// Counts over the whole run of `n_slots` slots. Records must have strictly
/// increasing slot indices below n_slots. Triggers whose partner slot falls
/// past the end of the run still count towards R_Si.
CountTotals accumulate(std::span<const PulseSlotRecord> records, std::uint64_t n_slots, long slot_offset);

/// Same as accumulate() restricted to triggers in [first_slot, last_slot);
/// `records` may extend past last_slot so partners are found. Summing
/// adjacent ranges reproduces the whole-run totals exactly.
CountTotals accumulate_range(std::span<const PulseSlotRecord> records, std::uint64_t n_slots,
                             std::uint64_t first_slot, std::uint64_t last_slot, long slot_offset);

/// Streaming counter for several offsets at once. Feed records in slot
/// order, then call totals() with the run length.
class CoincidenceCounter {
   public:
    explicit CoincidenceCounter(std::vector<long> offsets);

    void add(const PulseSlotRecord &record);
    std::vector<CountTotals> totals(std::uint64_t n_slots) const;
    const std::vector<long> &offsets() const { return offsets_; }

   private:
    std::vector<long> offsets_;
    long max_offset_ = 0;
    std::vector<CountTotals> counts_;
    std::uint64_t triggers_ = 0;
    std::deque<std::uint64_t> recent_triggers_;
    bool any_ = false;
    std::uint64_t last_slot_ = 0;
};

struct RateEstimate {
    double value = 0.0;  // s^-1
    double error = 0.0;  // binomial standard error, or the bound when upper_bound
    bool upper_bound = false;  // zero counts: value 0, error holds the 95% one-sided bound
};

struct RateSet {
    RateEstimate trigger;
    RateEstimate idler1;
    RateEstimate idler2;
    RateEstimate triple;
};

RateEstimate rate(std::uint64_t count, std::uint64_t n_slots, double repetition_rate_hz);
RateSet rates(const CountTotals &totals, double repetition_rate_hz);

/// Raw record dumps: CSV with columns slot,t,i1,i2, or packed binary
/// (little-endian u64 slot + u8 click bits per record).
void write_records_csv(std::ostream &out, std::span<const PulseSlotRecord> records);
void write_records_binary(std::ostream &out, std::span<const PulseSlotRecord> records);
std::vector<PulseSlotRecord> read_records_binary(std::istream &in);

}  // namespace pdcsim
