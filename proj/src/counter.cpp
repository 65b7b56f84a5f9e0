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

#include "pdcsim/counter.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

// 95% one-sided upper limit on a Poisson mean after observing zero events.
constexpr double kZeroCountBound = 2.995732273553991;

void check_offset(long m, std::uint64_t n_slots) {
    if (m < 0) {
        throw DomainError("slot offset must be >= 0");
    }
    if (static_cast<std::uint64_t>(m) >= n_slots) {
        throw DomainError("slot offset must be smaller than the run length");
    }
}

}  // namespace

CountTotals &CountTotals::operator+=(const CountTotals &o) {
    if (o.slot_offset != slot_offset || o.sub_slot_delay_ns != sub_slot_delay_ns) {
        throw ContractError("cannot merge totals taken at different delays");
    }
    n_slots += o.n_slots;
    trigger += o.trigger;
    idler1 += o.idler1;
    idler2 += o.idler2;
    triple += o.triple;
    return *this;
}

bool CountTotals::hierarchy_holds() const {
    return idler1 <= trigger && idler2 <= trigger && triple <= std::min(idler1, idler2) && trigger <= n_slots;
}

CountTotals accumulate_range(std::span<const PulseSlotRecord> records, std::uint64_t n_slots,
                             std::uint64_t first, std::uint64_t last, long m) {
    check_offset(m, n_slots);
    if (first > last || last > n_slots) {
        throw DomainError("slot range outside the run");
    }
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].slot <= records[i - 1].slot) {
            throw ContractError("records are not in strictly increasing slot order");
        }
    }
    if (!records.empty() && records.back().slot >= n_slots) {
        throw ContractError("record slot index beyond the run length");
    }
    CountTotals t;
    t.n_slots = last - first;
    t.slot_offset = m;
    const auto um = static_cast<std::uint64_t>(m);
    auto by_slot = [](const PulseSlotRecord &r, std::uint64_t s) { return r.slot < s; };
    auto it = std::lower_bound(records.begin(), records.end(), first, by_slot);
    for (; it != records.end() && it->slot < last; ++it) {
        if (!it->trigger) {
            continue;
        }
        ++t.trigger;
        const std::uint64_t partner = it->slot + um;
        if (partner >= n_slots) {
            continue;
        }
        const PulseSlotRecord *p = nullptr;
        if (um == 0) {
            p = &*it;
        } else {
            auto jt = std::lower_bound(it, records.end(), partner, by_slot);
            if (jt != records.end() && jt->slot == partner) {
                p = &*jt;
            }
        }
        if (p) {
            t.idler1 += p->idler1;
            t.idler2 += p->idler2;
            t.triple += p->idler1 && p->idler2;
        }
    }
    return t;
}

CountTotals accumulate(std::span<const PulseSlotRecord> records, std::uint64_t n_slots, long m) {
    return accumulate_range(records, n_slots, 0, n_slots, m);
}

CoincidenceCounter::CoincidenceCounter(std::vector<long> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.empty()) {
        throw DomainError("counter needs at least one slot offset");
    }
    for (long m : offsets_) {
        if (m < 0) {
            throw DomainError("slot offset must be >= 0");
        }
        max_offset_ = std::max(max_offset_, m);
    }
    counts_.resize(offsets_.size());
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
        counts_[i].slot_offset = offsets_[i];
    }
}

void CoincidenceCounter::add(const PulseSlotRecord &r) {
    if (any_ && r.slot <= last_slot_) {
        throw ContractError("records are not in strictly increasing slot order");
    }
    any_ = true;
    last_slot_ = r.slot;
    if (r.trigger) {
        ++triggers_;
        recent_triggers_.push_back(r.slot);
    }
    if (r.idler1 || r.idler2) {
        for (std::size_t i = 0; i < offsets_.size(); ++i) {
            const auto m = static_cast<std::uint64_t>(offsets_[i]);
            if (r.slot < m) {
                continue;
            }
            const std::uint64_t source = r.slot - m;
            if (!std::binary_search(recent_triggers_.begin(), recent_triggers_.end(), source)) {
                continue;
            }
            CountTotals &c = counts_[i];
            c.idler1 += r.idler1;
            c.idler2 += r.idler2;
            c.triple += r.idler1 && r.idler2;
        }
    }
    const auto keep_from = static_cast<std::int64_t>(r.slot) + 1 - max_offset_;
    while (!recent_triggers_.empty() && static_cast<std::int64_t>(recent_triggers_.front()) < keep_from) {
        recent_triggers_.pop_front();
    }
}

std::vector<CountTotals> CoincidenceCounter::totals(std::uint64_t n_slots) const {
    if (any_ && last_slot_ >= n_slots) {
        throw ContractError("record slot index beyond the run length");
    }
    std::vector<CountTotals> out = counts_;
    for (auto &c : out) {
        check_offset(c.slot_offset, n_slots);
        c.n_slots = n_slots;
        c.trigger = triggers_;
    }
    return out;
}

RateEstimate rate(std::uint64_t count, std::uint64_t n_slots, double f) {
    if (n_slots == 0) {
        throw DomainError("rate of an empty run");
    }
    const double n = static_cast<double>(n_slots);
    RateEstimate r;
    if (count == 0) {
        r.upper_bound = true;
        r.error = kZeroCountBound / n * f;
        return r;
    }
    const double p = static_cast<double>(count) / n;
    r.value = p * f;
    r.error = std::sqrt(p * (1.0 - p) / n) * f;
    return r;
}

RateSet rates(const CountTotals &t, double f) {
    return {rate(t.trigger, t.n_slots, f), rate(t.idler1, t.n_slots, f), rate(t.idler2, t.n_slots, f),
            rate(t.triple, t.n_slots, f)};
}

void write_records_csv(std::ostream &out, std::span<const PulseSlotRecord> records) {
    out << "slot,t,i1,i2\n";
    for (const auto &r : records) {
        out << r.slot << ',' << int(r.trigger) << ',' << int(r.idler1) << ',' << int(r.idler2) << '\n';
    }
}

void write_records_binary(std::ostream &out, std::span<const PulseSlotRecord> records) {
    for (const auto &r : records) {
        unsigned char buf[9];
        for (int i = 0; i < 8; ++i) {
            buf[i] = static_cast<unsigned char>(r.slot >> (8 * i));
        }
        buf[8] = static_cast<unsigned char>(r.trigger | (r.idler1 << 1) | (r.idler2 << 2));
        out.write(reinterpret_cast<const char *>(buf), sizeof buf);
    }
}

std::vector<PulseSlotRecord> read_records_binary(std::istream &in) {
    std::vector<PulseSlotRecord> out;
    unsigned char buf[9];
    while (in.read(reinterpret_cast<char *>(buf), sizeof buf)) {
        PulseSlotRecord r;
        for (int i = 0; i < 8; ++i) {
            r.slot |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
        }
        r.trigger = buf[8] & 1;
        r.idler1 = buf[8] & 2;
        r.idler2 = buf[8] & 4;
        out.push_back(r);
    }
    if (in.gcount() != 0) {
        throw DomainError("truncated binary record stream");
    }
    return out;
}

}  // namespace pdcsim
