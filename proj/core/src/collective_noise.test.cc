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


#include "serq/collective_noise.h"

#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "oracle/random_circuits.h"
#include "serq/optical_elements.h"

using namespace serq;

TEST(collective_noise, identity_sample) {
    for (std::uint64_t seed : {0ull, 1ull, 12345ull}) {
        ASSERT_EQ(sample_noise(NoiseEnsemble::identity(), seed), NoiseParams::identity());
    }
}

TEST(collective_noise, dephasing_pi) {
    NoiseParams p = sample_noise(NoiseEnsemble::dephasing(std::numbers::pi), 3);
    ASSERT_EQ(p.d1, Complex(1));
    ASSERT_EQ(p.g1, Complex(0));
    ASSERT_EQ(p.d2, Complex(0));
    ASSERT_NEAR(std::abs(p.g2 - Complex(-1)), 0, 1e-15);
}

TEST(collective_noise, haar_seed7_is_unitary) {
    NoiseParams p = sample_noise(NoiseEnsemble::haar(), 7);
    // U maps (H, V) columns to (d1, g1) and (d2, g2); multiply out U^dagger U.
    Complex u[2][2] = {{p.d1, p.d2}, {p.g1, p.g2}};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            Complex dot = std::conj(u[0][i]) * u[0][j] + std::conj(u[1][i]) * u[1][j];
            ASSERT_NEAR(std::abs(dot - Complex(i == j ? 1 : 0)), 0, 1e-12);
        }
    }
    ASSERT_NEAR(std::abs(p.det()), 1, 1e-12);
}

TEST(collective_noise, ensembles_satisfy_invariants) {
    for (std::uint64_t seed = 0; seed < 500; seed++) {
        ASSERT_TRUE(sample_noise(NoiseEnsemble::haar(), seed).is_unitary());
        ASSERT_TRUE(sample_noise(NoiseEnsemble::row_normalized(), seed).is_valid());
        ASSERT_TRUE(sample_noise(NoiseEnsemble::dephasing(0.1 * seed), seed).is_unitary());
    }
    // The general ensemble really leaves the unitary class.
    int non_unitary = 0;
    for (std::uint64_t seed = 0; seed < 100; seed++) {
        non_unitary += !sample_noise(NoiseEnsemble::row_normalized(), seed).is_unitary(1e-6);
    }
    ASSERT_GT(non_unitary, 90);
}

TEST(collective_noise, sampling_is_deterministic) {
    for (auto e : {NoiseEnsemble::haar(), NoiseEnsemble::row_normalized()}) {
        ASSERT_EQ(sample_noise(e, 99), sample_noise(e, 99));
        ASSERT_NE(sample_noise(e, 99), sample_noise(e, 100));
    }
}

TEST(collective_noise, ensemble_parse) {
    ASSERT_EQ(NoiseEnsemble::parse("identity").kind, NoiseEnsemble::Kind::Identity);
    ASSERT_EQ(NoiseEnsemble::parse("haar").kind, NoiseEnsemble::Kind::HaarUnitary);
    ASSERT_EQ(NoiseEnsemble::parse("general").kind, NoiseEnsemble::Kind::RowNormalizedGeneral);
    NoiseEnsemble d = NoiseEnsemble::parse("dephasing:1.5");
    ASSERT_EQ(d.kind, NoiseEnsemble::Kind::Dephasing);
    ASSERT_EQ(d.phi, 1.5);
    ASSERT_EQ(NoiseEnsemble::parse(d.name()).phi, 1.5);
    ASSERT_THROW(NoiseEnsemble::parse("unitary"), std::invalid_argument);
    ASSERT_THROW(NoiseEnsemble::parse("dephasing:"), std::invalid_argument);
    ASSERT_THROW(NoiseEnsemble::parse("dephasing:1x"), std::invalid_argument);
}

TEST(collective_noise, csv_round_trip) {
    NoiseParams p = sample_noise(NoiseEnsemble::row_normalized(), 4);
    std::array<double, 8> f{};
    std::string csv = p.to_csv();
    size_t pos = 0;
    for (double &x : f) {
        size_t end = csv.find(',', pos);
        x = std::stod(csv.substr(pos, end - pos));
        pos = end + 1;
    }
    ASSERT_EQ(NoiseParams::from_floats(f), p);
}

TEST(collective_noise, action_on_modes) {
    NoiseParams p{{0.6, 0}, {0, 0.8}, {0.8, 0}, {-0.6, 0}};
    PhotonState s;
    s.add("f", Polarization::H, 2, 1.0);
    s.add("f", Polarization::V, 5, 2.0);
    s.add("g", Polarization::H, 2, 1.0);
    PhotonState out = apply_collective_noise(s, p, "f");
    ASSERT_EQ(out.amplitude("f", Polarization::H, 2), p.d1);
    ASSERT_EQ(out.amplitude("f", Polarization::V, 2), p.g1);
    ASSERT_EQ(out.amplitude("f", Polarization::H, 5), 2.0 * p.d2);
    ASSERT_EQ(out.amplitude("f", Polarization::V, 5), 2.0 * p.g2);
    ASSERT_EQ(out.amplitude("g", Polarization::H, 2), Complex(1));
    ASSERT_EQ(apply_collective_noise(s, NoiseParams::identity(), "f").max_deviation(s), 0);
}

TEST(collective_noise, general_conserves_norm_on_single_polarization_channels) {
    // Each channel carries one polarization only, so only the row norms matter.
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    std::vector<std::string> channels{"a", "b"};
    for (std::uint64_t k = 0; k < 1000; k++) {
        PhotonState s;
        for (Tick t = 0; t < 6; t++) {
            s.add("a", Polarization::H, t, {g(rng), g(rng)});
            s.add("b", Polarization::V, t, {g(rng), g(rng)});
        }
        NoiseParams p = sample_noise(NoiseEnsemble::row_normalized(), k);
        ASSERT_NEAR(apply_collective_noise(s, p, channels).norm_sq(), s.norm_sq(), 1e-12);
    }
}

TEST(collective_noise, haar_conserves_norm_on_any_state) {
    std::mt19937_64 rng(22);
    for (std::uint64_t k = 0; k < 1000; k++) {
        PhotonState s = serq_oracle::random_state(rng, "c", 10, 8);
        NoiseParams p = sample_noise(NoiseEnsemble::haar(), k);
        ASSERT_NEAR(apply_collective_noise(s, p, "c").norm_sq(), 1, 1e-12);
    }
}

TEST(collective_noise, commutes_with_delay_and_restrict) {
    std::mt19937_64 rng(23);
    for (std::uint64_t k = 0; k < 200; k++) {
        PhotonState s = serq_oracle::random_state(rng, "c", 10, 8);
        NoiseParams p = sample_noise(NoiseEnsemble::row_normalized(), k);
        auto noise = [&](const PhotonState &x) { return apply_collective_noise(x, p, "c"); };
        Tick d = static_cast<Tick>(k % 7);
        ASSERT_LT(noise(apply_delay(s, "c", d)).max_deviation(apply_delay(noise(s), "c", d)), 1e-15);
        TickRange w{static_cast<Tick>(k % 4), static_cast<Tick>(k % 4 + 3)};
        ASSERT_LT(noise(restrict(s, "c", w)).max_deviation(restrict(noise(s), "c", w)), 1e-15);
    }
}

TEST(collective_noise, mix_seed_spreads) {
    ASSERT_NE(mix_seed(1, 0), mix_seed(1, 1));
    ASSERT_NE(mix_seed(1, 0), mix_seed(2, 0));
    ASSERT_EQ(mix_seed(5, 9), mix_seed(5, 9));
}
