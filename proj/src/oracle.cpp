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

#include "pdcsim/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

double pgf(PairLaw law, double mean, double x) {
    return law == PairLaw::thermal ? 1.0 / (1.0 + mean * (1.0 - x)) : std::exp(-mean * (1.0 - x));
}

void check(const OracleConfig &cfg) {
    if (auto errs = validate(cfg); !errs.empty()) {
        throw DomainError(errs.front());
    }
}

}  // namespace

std::vector<std::string> validate(const OracleConfig &cfg) {
    std::vector<std::string> out;
    auto unit = [&](double v, const char *name) {
        if (!(v >= 0.0 && v <= 1.0)) {
            out.push_back(std::string("oracle.") + name + " must be in [0, 1]");
        }
    };
    unit(cfg.signal_efficiency, "signal_efficiency");
    unit(cfg.idler_efficiency, "idler_efficiency");
    unit(cfg.splitter_ratio, "splitter_ratio");
    unit(cfg.noise.trigger, "noise.trigger");
    unit(cfg.noise.idler1, "noise.idler1");
    unit(cfg.noise.idler2, "noise.idler2");
    unit(cfg.gate_overlap, "gate_overlap");
    if (cfg.pmf) {
        double s = 0.0;
        for (double p : *cfg.pmf) {
            if (!(p >= 0.0)) {
                out.push_back("oracle.pmf entries must be >= 0");
                break;
            }
            s += p;
        }
        if (!(s <= 1.0 + 1e-12)) {
            out.push_back("oracle.pmf sums above 1");
        }
    }
    return out;
}

SlotProbabilities expected_rates(const OracleConfig &cfg) {
    check(cfg);
    std::vector<double> table;
    double tail;
    if (cfg.pmf) {
        table = *cfg.pmf;
        double s = 0.0;
        for (double p : table) {
            s += p;
        }
        tail = std::max(0.0, 1.0 - s);
    } else {
        const auto &d = cfg.distribution;
        table.resize(d.n_max() + 1);
        for (unsigned n = 0; n <= d.n_max(); ++n) {
            table[n] = d.probability(n);
        }
        tail = d.tail_mass();
    }
    const double es = cfg.signal_efficiency;
    const double ei = cfg.idler_efficiency * cfg.gate_overlap;
    const double r = cfg.splitter_ratio;
    const double q1 = 1.0 - cfg.noise.idler1;
    const double q2 = 1.0 - cfg.noise.idler2;
    const double qt = 1.0 - cfg.noise.trigger;

    SlotProbabilities out;
    out.tail_mass = tail;
    std::vector<double> binom;
    for (std::size_t n = 0; n < table.size(); ++n) {
        const double pn = table[n];
        if (pn == 0.0) {
            continue;
        }
        // Binomial(n, ei) over the number j of detected idler photons.
        binom.assign(n + 1, 0.0);
        if (ei <= 0.0) {
            binom[0] = 1.0;
        } else if (ei >= 1.0) {
            binom[n] = 1.0;
        } else {
            const double lp = std::log(ei);
            const double lq = std::log1p(-ei);
            const double lgn = std::lgamma(n + 1.0);
            for (std::size_t j = 0; j <= n; ++j) {
                binom[j] = std::exp(lgn - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * lp + (n - j) * lq);
            }
        }
        // j detected photons leave port 1 dark with (1 - r)^j, port 2 with r^j.
        double none1 = 0.0;
        double none2 = 0.0;
        double pw1 = 1.0;
        double pw2 = 1.0;
        for (std::size_t j = 0; j <= n; ++j) {
            none1 += binom[j] * pw1;
            none2 += binom[j] * pw2;
            pw1 *= 1.0 - r;
            pw2 *= r;
        }
        const double no1 = none1 * q1;
        const double no2 = none2 * q2;
        const double no12 = binom[0] * q1 * q2;
        const double trig = 1.0 - std::pow(1.0 - es, static_cast<double>(n)) * qt;
        const double s1 = 1.0 - no1;
        const double s2 = 1.0 - no2;
        const double both = 1.0 - no1 - no2 + no12;
        out.trigger += pn * trig;
        out.trig_id1 += pn * trig * s1;
        out.trig_id2 += pn * trig * s2;
        out.triple += pn * trig * both;
        out.idler1_single += pn * s1;
        out.idler2_single += pn * s2;
        out.idler_both_single += pn * both;
    }
    return out;
}

SlotProbabilities generating_function_rates(const OracleConfig &cfg) {
    check(cfg);
    const PairLaw law = cfg.distribution.law();
    const double mu = cfg.distribution.mean();
    auto g = [&](double x) { return pgf(law, mu, x); };
    const double es = cfg.signal_efficiency;
    const double ei = cfg.idler_efficiency * cfg.gate_overlap;
    const double r = cfg.splitter_ratio;
    const double qt = 1.0 - cfg.noise.trigger;
    const double q1 = 1.0 - cfg.noise.idler1;
    const double q2 = 1.0 - cfg.noise.idler2;
    const double xs = 1.0 - es;
    const double x1 = 1.0 - r * ei;
    const double x2 = 1.0 - (1.0 - r) * ei;
    const double x12 = 1.0 - ei;
    // "No click" probabilities for every subset of detectors.
    const double nt = qt * g(xs);
    const double n1 = q1 * g(x1);
    const double n2 = q2 * g(x2);
    const double nt1 = qt * q1 * g(xs * x1);
    const double nt2 = qt * q2 * g(xs * x2);
    const double n12 = q1 * q2 * g(x12);
    const double nt12 = qt * q1 * q2 * g(xs * x12);
    SlotProbabilities p;
    p.trigger = 1.0 - nt;
    p.idler1_single = 1.0 - n1;
    p.idler2_single = 1.0 - n2;
    p.idler_both_single = 1.0 - n1 - n2 + n12;
    p.trig_id1 = 1.0 - nt - n1 + nt1;
    p.trig_id2 = 1.0 - nt - n2 + nt2;
    p.triple = 1.0 - nt - n1 - n2 + nt1 + nt2 + n12 - nt12;
    return p;
}

OffsetProbabilities expected_offset_rates(const SlotProbabilities &p) {
    return {p.trigger * p.idler1_single, p.trigger * p.idler2_single, p.trigger * p.idler_both_single};
}

OffsetProbabilities expected_offset_rates(const OracleConfig &cfg) {
    return expected_offset_rates(expected_rates(cfg));
}

TotalsView expected_totals(const SlotProbabilities &p, double n) {
    return {n, p.trigger * n, p.trig_id1 * n, p.trig_id2 * n, p.triple * n};
}

TotalsView expected_totals(const SlotProbabilities &m, const OffsetProbabilities &p, double n) {
    return {n, m.trigger * n, p.trig_id1 * n, p.trig_id2 * n, p.triple * n};
}

}  // namespace pdcsim
