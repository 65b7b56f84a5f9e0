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

#include <string>

#include "pdcsim/config.hpp"

namespace pdcsim {

/// Oracle predictions of the four quantities the background model is tuned to.
struct CalibrationPrediction {
    double heralding = 0.0;
    double trigger_rate_hz = 0.0;
    double car_dtau_low = 0.0;
    double car_dtau_high = 0.0;
};

CalibrationPrediction predict(const ExperimentConfig &cfg);

struct BackgroundCalibration {
    double residual = 1.0;  // transmission of the residual signal stage
    double trigger_per_uw = 0.0;
    double idler_hz = 0.0;
    double idler_per_uw = 0.0;
    int iterations = 0;
    double max_relative_error = 0.0;
};

/// Solves for the residual signal transmission and the three background
/// coefficients so that the oracle reproduces cfg.calibration. The
/// starting point is taken from cfg itself. Throws FitError on failure.
BackgroundCalibration calibrate(const ExperimentConfig &cfg);

/// Copy of cfg with the calibrated values written in.
ExperimentConfig apply(ExperimentConfig cfg, const BackgroundCalibration &c);

/// Human-readable summary, including the QPM offsets from calibrate_offsets.
std::string calibration_summary(const ExperimentConfig &cfg, const BackgroundCalibration &c);

}  // namespace pdcsim
