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

#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pdcsim/calibration.hpp"
#include "pdcsim/errors.hpp"

using namespace pdcsim;
using nlohmann::json;

namespace {

std::string default_text() {
    std::ifstream in(PDCSIM_DEFAULT_CONFIG);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json default_json() { return json::parse(default_text(), nullptr, true, true); }

std::vector<std::string> diagnostics_of(const json &doc) {
    try {
        (void)parse_config(doc.dump());
    } catch (const ConfigError &e) {
        return e.diagnostics();
    }
    return {};
}

bool mentions(const std::vector<std::string> &diags, const std::string &needle) {
    return std::any_of(diags.begin(), diags.end(),
                       [&](const std::string &d) { return d.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Config, DefaultsLoadAndValidate) {
    const ExperimentConfig cfg = load_config(PDCSIM_DEFAULT_CONFIG);
    EXPECT_TRUE(validate(cfg).empty());
    EXPECT_EQ(cfg.master_seed, 20260101u);
    EXPECT_EQ(cfg.law, PairLaw::thermal);
    EXPECT_EQ(cfg.signal_channel.stages().size(), 5u);
    EXPECT_NEAR(cfg.idler_channel.transmission(), 0.663 * 0.991, 1e-15);
    EXPECT_NEAR(cfg.pump.mean_pairs(85.14), 0.24, 1e-12);
    EXPECT_EQ(cfg.coupler_measurements.size(), 4u);
    ASSERT_EQ(cfg.delay_scan.delays_ns.size(), 31u);
    EXPECT_DOUBLE_EQ(cfg.delay_scan.delays_ns.front(), -3.0);
    EXPECT_NEAR(cfg.delay_scan.delays_ns.back(), 3.0, 1e-12);
    EXPECT_EQ(cfg.stem_lengths_um.size(), 31u);
    EXPECT_EQ(cfg.detectors.idler1.mode, DetectorMode::gated);
}

TEST(Config, ShippedBackgroundIsCalibrated) {
    const ExperimentConfig cfg = load_config(PDCSIM_DEFAULT_CONFIG);
    const BackgroundCalibration c = calibrate(cfg);
    EXPECT_NEAR(c.residual / cfg.signal_channel.stage("residual"), 1.0, 1e-8);
    EXPECT_NEAR(c.trigger_per_uw / cfg.background.trigger_per_uw, 1.0, 1e-8);
    EXPECT_NEAR(c.idler_hz / cfg.background.idler_hz, 1.0, 1e-8);
    EXPECT_NEAR(c.idler_per_uw / cfg.background.idler_per_uw, 1.0, 1e-8);
    const CalibrationPrediction p = predict(cfg);
    EXPECT_NEAR(p.heralding, 0.60, 1e-8);
    EXPECT_NEAR(p.trigger_rate_hz, 56e3, 1e-3);
    EXPECT_NEAR(p.car_dtau_low, 1383.0, 1e-5);
    EXPECT_NEAR(p.car_dtau_high, 1165.0, 1e-5);
}

TEST(Config, ShippedIndexOffsetsAreCalibrated) {
    const ExperimentConfig cfg = load_config(PDCSIM_DEFAULT_CONFIG);
    const auto fresh = qpm::calibrate_offsets(cfg.dispersion, cfg.qpm, cfg.qpm_calibration);
    for (int b = 0; b < 3; ++b) {
        EXPECT_NEAR(fresh.offsets[b], cfg.dispersion.offsets[b], 1e-9) << b;
    }
}

TEST(Config, UnknownKeyIsReported) {
    json doc = default_json();
    doc["source"]["colour"] = "red";
    EXPECT_TRUE(mentions(diagnostics_of(doc), "source.colour: unknown key"));
}

TEST(Config, RejectsZeroPulses) {
    json doc = default_json();
    doc["n_pulses"] = 0;
    EXPECT_TRUE(mentions(diagnostics_of(doc), "n_pulses"));
}

TEST(Config, DelayGridMustCoverTheGate) {
    json doc = default_json();
    doc["sweeps"]["delay"]["delays_ns"] = {-1.0, 0.0, 1.0};
    EXPECT_TRUE(mentions(diagnostics_of(doc), "sweeps.delay.delays_ns"));
}

TEST(Config, ListsEveryProblem) {
    json doc = default_json();
    doc["n_pulses"] = 0;
    doc["bogus"] = 1;
    doc["source"]["splitter_ratio"] = 1.5;
    doc["detectors"]["idler1"]["mode"] = "sometimes";
    const auto d = diagnostics_of(doc);
    EXPECT_GE(d.size(), 4u);
    EXPECT_TRUE(mentions(d, "n_pulses"));
    EXPECT_TRUE(mentions(d, "bogus"));
    EXPECT_TRUE(mentions(d, "splitter_ratio"));
    EXPECT_TRUE(mentions(d, "idler1.mode"));
}

TEST(Config, BadStageTransmission) {
    json doc = default_json();
    doc["source"]["signal_channel"][0]["transmission"] = 1.3;
    EXPECT_TRUE(mentions(diagnostics_of(doc), "transmission"));
}

TEST(Config, SyntaxAndMissingFile) {
    EXPECT_THROW((void)parse_config("{ \"n_pulses\": "), ConfigError);
    EXPECT_THROW((void)load_config("/nonexistent/pdcsim.json"), ConfigError);
}

TEST(Config, CommentsAreAllowed) {
    const std::string text = default_text();
    ASSERT_NE(text.find("//"), std::string::npos);
    EXPECT_NO_THROW((void)parse_config(text));
}
