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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace serq {

namespace {

/// Uniformly random unit vector in C^2 (normalized complex Gaussian).
std::array<Complex, 2> random_unit_c2(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (true) {
        Complex a{gauss(rng), gauss(rng)};
        Complex b{gauss(rng), gauss(rng)};
        double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n > 1e-6) {
            return {a / n, b / n};
        }
    }
}

}  // namespace

bool NoiseParams::is_valid(double tol) const {
    return std::abs(std::norm(d1) + std::norm(g1) - 1) <= tol && std::abs(std::norm(d2) + std::norm(g2) - 1) <= tol;
}

bool NoiseParams::is_unitary(double tol) const {
    return is_valid(tol) && std::abs(std::conj(d1) * d2 + std::conj(g1) * g2) <= tol;
}

std::array<double, 8> NoiseParams::to_floats() const {
    return {d1.real(), d1.imag(), g1.real(), g1.imag(), d2.real(), d2.imag(), g2.real(), g2.imag()};
}

NoiseParams NoiseParams::from_floats(std::span<const double, 8> v) {
    return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
}

std::string NoiseParams::to_csv() const {
    std::string out;
    for (double x : to_floats()) {
        if (!out.empty()) {
            out += ',';
        }
        out += format_double(x);
    }
    return out;
}

NoiseEnsemble NoiseEnsemble::parse(std::string_view text) {
    if (text == "identity") {
        return identity();
    }
    if (text == "haar") {
        return haar();
    }
    if (text == "general") {
        return row_normalized();
    }
    constexpr std::string_view prefix = "dephasing:";
    if (text.starts_with(prefix)) {
        std::string rest(text.substr(prefix.size()));
        size_t used = 0;
        double phi = 0;
        try {
            phi = std::stod(rest, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != rest.size()) {
            throw std::invalid_argument("bad dephasing angle in ensemble '" + std::string(text) + "'");
        }
        return dephasing(phi);
    }
    throw std::invalid_argument("unknown noise ensemble '" + std::string(text) +
                                "' (expected identity, haar, general, or dephasing:<phi>)");
}

std::string NoiseEnsemble::name() const {
    switch (kind) {
        case Kind::Identity:
            return "identity";
        case Kind::HaarUnitary:
            return "haar";
        case Kind::RowNormalizedGeneral:
            return "general";
        case Kind::Dephasing:
            return "dephasing:" + format_double(phi);
    }
    return "?";
}

NoiseParams sample_noise(const NoiseEnsemble &ensemble, std::uint64_t seed) {
    switch (ensemble.kind) {
        case NoiseEnsemble::Kind::Identity:
            return NoiseParams::identity();
        case NoiseEnsemble::Kind::Dephasing:
            return {{1, 0}, {0, 0}, {0, 0}, std::polar(1.0, ensemble.phi)};
        case NoiseEnsemble::Kind::HaarUnitary: {
            // U = e^{i phase} [[a, -conj(b)], [b, conj(a)]] with (a, b) uniform on the 3-sphere.
            std::mt19937_64 rng(seed);
            auto [a, b] = random_unit_c2(rng);
            std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
            Complex phase = std::polar(1.0, angle(rng));
            return {phase * a, phase * b, -phase * std::conj(b), phase * std::conj(a)};
        }
        case NoiseEnsemble::Kind::RowNormalizedGeneral: {
            std::mt19937_64 rng(seed);
            auto [d1, g1] = random_unit_c2(rng);
            auto [d2, g2] = random_unit_c2(rng);
            return {d1, g1, d2, g2};
        }
    }
    throw std::logic_error("unhandled noise ensemble");
}

PhotonState apply_collective_noise(const PhotonState &s, const NoiseParams &p,
                                   std::span<const std::string> channels) {
    PhotonState out;
    for (const auto &[mode, amp] : s) {
        if (std::find(channels.begin(), channels.end(), mode.channel) == channels.end()) {
            out.add(mode, amp);
            continue;
        }
        bool from_h = mode.pol == Polarization::H;
        out.add(mode.channel, Polarization::H, mode.t, amp * (from_h ? p.d1 : p.d2));
        out.add(mode.channel, Polarization::V, mode.t, amp * (from_h ? p.g1 : p.g2));
    }
    return out;
}

PhotonState apply_collective_noise(const PhotonState &s, const NoiseParams &p, std::string_view channel) {
    std::string c(channel);
    return apply_collective_noise(s, p, std::span<const std::string>(&c, 1));
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace serq
