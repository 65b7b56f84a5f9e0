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

#include "pdcsim/calibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "pdcsim/errors.hpp"
#include "pdcsim/experiments.hpp"
#include "pdcsim/report.hpp"

namespace pdcsim {

namespace {

using Vec = Eigen::Vector4d;

Vec as_vector(const CalibrationPrediction &p) {
    return {p.heralding, p.trigger_rate_hz, p.car_dtau_low, p.car_dtau_high};
}

Vec targets(const CalibrationTargets &t) {
    return {t.heralding, t.trigger_rate_hz, t.car_dtau_low, t.car_dtau_high};
}

BackgroundCalibration unpack(const Vec &logx) {
    BackgroundCalibration c;
    c.residual = std::exp(logx[0]);
    c.trigger_per_uw = std::exp(logx[1]);
    c.idler_hz = std::exp(logx[2]);
    c.idler_per_uw = std::exp(logx[3]);
    return c;
}

// Log-residuals keep the very different scales (0.6 vs 5e4) comparable.
Vec residuals(const ExperimentConfig &cfg, const Vec &logx) {
    const Vec got = as_vector(predict(apply(cfg, unpack(logx))));
    const Vec want = targets(cfg.calibration);
    Vec r;
    for (int i = 0; i < 4; ++i) {
        if (!(got[i] > 0.0) || !std::isfinite(got[i])) {
            r[i] = NAN;
        } else {
            r[i] = std::log(got[i] / want[i]);
        }
    }
    return r;
}

double positive_or(double v, double fallback) { return v > 0.0 ? v : fallback; }

}  // namespace

CalibrationPrediction predict(const ExperimentConfig &cfg) {
    const auto &t = cfg.calibration;
    CalibrationPrediction p;
    p.heralding = oracle_point(cfg, t.heralding_power_uw).metrics.heralding.value;
    p.trigger_rate_hz = oracle_point(cfg, t.trigger_rate_power_uw).aligned.trigger * cfg.pump.repetition_rate_hz;
    p.car_dtau_low = oracle_point(cfg, t.car_dtau_low_power_uw).metrics.car_dtau.value;
    p.car_dtau_high = oracle_point(cfg, t.car_dtau_high_power_uw).metrics.car_dtau.value;
    return p;
}

ExperimentConfig apply(ExperimentConfig cfg, const BackgroundCalibration &c) {
    std::vector<OpticalChannel::Stage> stages = cfg.signal_channel.stages();
    auto it = std::find_if(stages.begin(), stages.end(),
                           [&](const auto &s) { return s.name == cfg.calibration.residual_stage; });
    if (it == stages.end()) {
        stages.push_back({cfg.calibration.residual_stage, c.residual});
    } else {
        it->transmission = c.residual;
    }
    cfg.signal_channel = OpticalChannel(std::move(stages));
    cfg.background.trigger_per_uw = c.trigger_per_uw;
    cfg.background.idler_hz = c.idler_hz;
    cfg.background.idler_per_uw = c.idler_per_uw;
    return cfg;
}

BackgroundCalibration calibrate(const ExperimentConfig &cfg) {
    double start_residual = 0.9;
    for (const auto &s : cfg.signal_channel.stages()) {
        if (s.name == cfg.calibration.residual_stage) {
            start_residual = s.transmission;
        }
    }
    Vec x{std::log(positive_or(start_residual, 0.9)), std::log(positive_or(cfg.background.trigger_per_uw, 1000.0)),
          std::log(positive_or(cfg.background.idler_hz, 3e4)), std::log(positive_or(cfg.background.idler_per_uw, 2e3))};
    Vec r = residuals(cfg, x);
    if (!r.allFinite()) {
        throw FitError("background calibration: starting point gives undefined predictions");
    }
    constexpr int kMaxIterations = 60;
    constexpr double kTolerance = 1e-11;
    constexpr double kStep = 1e-6;
    int it = 0;
    for (; it < kMaxIterations && r.cwiseAbs().maxCoeff() > kTolerance; ++it) {
        Eigen::Matrix4d jac;
        for (int j = 0; j < 4; ++j) {
            Vec xp = x;
            xp[j] += kStep;
            jac.col(j) = (residuals(cfg, xp) - r) / kStep;
        }
        const Vec dx = jac.colPivHouseholderQr().solve(-r);
        if (!dx.allFinite()) {
            throw FitError("background calibration: singular Jacobian");
        }
        // Backtrack until the residual norm drops.
        double lambda = 1.0;
        for (; lambda > 1e-6; lambda *= 0.5) {
            const Vec xn = x + lambda * dx;
            const Vec rn = residuals(cfg, xn);
            if (rn.allFinite() && rn.norm() < r.norm()) {
                x = xn;
                r = rn;
                break;
            }
        }
        if (lambda <= 1e-6) {
            break;
        }
    }
    BackgroundCalibration c = unpack(x);
    c.iterations = it;
    c.max_relative_error = r.cwiseAbs().maxCoeff();
    if (!(c.max_relative_error < 1e-6)) {
        throw FitError("background calibration did not converge (max log-residual " +
                       report::num(c.max_relative_error) + ")");
    }
    return c;
}

std::string calibration_summary(const ExperimentConfig &cfg, const BackgroundCalibration &c) {
    using report::num;
    std::ostringstream out;
    const qpm::DispersionModel d = qpm::calibrate_offsets(cfg.dispersion, cfg.qpm, cfg.qpm_calibration);
    out << "qpm offsets: pump " << num(d.offsets[0]) << " signal " << num(d.offsets[1]) << " idler "
        << num(d.offsets[2]) << "\n";
    out << "signal stage '" << cfg.calibration.residual_stage << "': " << num(c.residual) << "\n";
    out << "background: trigger_per_uw " << num(c.trigger_per_uw) << " idler_hz " << num(c.idler_hz)
        << " idler_per_uw " << num(c.idler_per_uw) << "\n";
    const CalibrationPrediction p = predict(apply(cfg, c));
    out << "predicted: eta_H " << num(p.heralding) << " R_Si " << num(p.trigger_rate_hz) << " CAR_dtau "
        << num(p.car_dtau_low) << " / " << num(p.car_dtau_high) << "\n";
    out << "iterations " << c.iterations << " max log-residual " << num(c.max_relative_error) << "\n";
    return out.str();
}

}  // namespace pdcsim
