// Copyright 2026 The serq Authors
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


#include "serq/qkd.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace serq;

TEST(qkd, effective_efficiency) {
    ASSERT_EQ(effective_efficiency(1, 1), 0.75);
    ASSERT_NEAR(effective_efficiency(1, 0.2), 0.15, 1e-15);
    ASSERT_EQ(effective_efficiency(4, 1), 31.0 / 32);
    ASSERT_THROW(effective_efficiency(0, 1), std::invalid_argument);
    ASSERT_THROW(effective_efficiency(1, 0), std::invalid_argument);
    ASSERT_THROW(effective_efficiency(1, 1.5), std::invalid_argument);
}

TEST(qkd, config_validation_names_field) {
    Bb84Config cfg;
    cfg.pulses = 0;
    try {
        cfg.validate();
        FAIL();
    } catch (const std::invalid_argument &e) {
        ASSERT_NE(std::string(e.what()).find("pulses"), std::string::npos);
    }
    cfg = {};
    cfg.eta = 0;
    ASSERT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.refresh_period = 0;
    ASSERT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(qkd, zero_qber_under_haar_noise) {
    Bb84Config cfg;
    cfg.pulses = 4000;
    Bb84Stats s = simulate_bb84(cfg);
    ASSERT_EQ(s.sent, 4000u);
    ASSERT_EQ(s.errors, 0u);
    ASSERT_EQ(s.qber, 0);
    double sigma = std::sqrt(0.75 * 0.25 / 4000);
    ASSERT_NEAR(s.detection_rate, 0.75, 4 * sigma);
    ASSERT_LE(s.sifted, s.detected);
    ASSERT_EQ(s.detected + s.rejected, s.sent);
}

TEST(qkd, identity_noise_sifts_half) {
    Bb84Config cfg;
    cfg.pulses = 100;
    cfg.ensemble = NoiseEnsemble::identity();
    Bb84Stats s = simulate_bb84(cfg);
    ASSERT_EQ(s.qber, 0);
    double p = static_cast<double>(s.sifted) / static_cast<double>(s.detected);
    ASSERT_NEAR(p, 0.5, 4 * std::sqrt(0.25 / static_cast<double>(s.detected)));
}

TEST(qkd, general_noise_and_paper_convention) {
    Bb84Config cfg;
    cfg.pulses = 1000;
    cfg.ensemble = NoiseEnsemble::row_normalized();
    cfg.convention = BsConvention::PaperSurfacePhases;
    cfg.refresh_period = 7;
    cfg.dTprime = 9;
    ASSERT_EQ(simulate_bb84(cfg).errors, 0u);
}

TEST(qkd, efficiency_scales_detection) {
    Bb84Config cfg;
    cfg.pulses = 4000;
    cfg.stages = 2;
    cfg.eta = 0.6;
    Bb84Stats s = simulate_bb84(cfg);
    double p = 0.6 * 7 / 8;
    ASSERT_NEAR(s.detection_rate, p, 4 * std::sqrt(p * (1 - p) / 4000));
    ASSERT_EQ(s.errors, 0u);
}

TEST(qkd, deterministic_per_seed) {
    Bb84Config cfg;
    cfg.pulses = 500;
    Bb84Stats a = simulate_bb84(cfg), b = simulate_bb84(cfg);
    ASSERT_EQ(a.csv_row(), b.csv_row());
    cfg.seed = 2;
    ASSERT_NE(simulate_bb84(cfg).csv_row(), a.csv_row());
    ASSERT_EQ(Bb84Stats::csv_header(), "pulses,sifted,errors,qber,detection_rate");
}
