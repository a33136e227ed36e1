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

#ifndef SERQ_COLLECTIVE_NOISE_H
#define SERQ_COLLECTIVE_NOISE_H

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "serq/photon_state.h"

namespace serq {

/// One collective polarization transformation shared by every wavepacket of a transmission:
///
///     |H> -> d1 |H> + g1 |V>
///     |V> -> d2 |H> + g2 |V>
///
/// Valid parameters satisfy |d1|^2 + |g1|^2 = |d2|^2 + |g2|^2 = 1. Nothing else is required, so
/// the transformation need not be unitary.
struct NoiseParams {
    Complex d1{1, 0};
    Complex g1{0, 0};
    Complex d2{0, 0};
    Complex g2{1, 0};

    static NoiseParams identity() {
        return {};
    }
    bool is_valid(double tol = kAmplitudeTolerance) const;
    /// True when the transformation is also unitary (columns orthonormal).
    bool is_unitary(double tol = kAmplitudeTolerance) const;
    Complex det() const {
        return d1 * g2 - d2 * g1;
    }

    /// re(d1),im(d1),re(g1),im(g1),re(d2),im(d2),re(g2),im(g2)
    std::array<double, 8> to_floats() const;
    static NoiseParams from_floats(std::span<const double, 8> v);
    /// The eight floats joined by ',' with round-trip precision.
    std::string to_csv() const;

    bool operator==(const NoiseParams &other) const = default;
};

struct NoiseEnsemble {
    enum class Kind { Identity, HaarUnitary, RowNormalizedGeneral, Dephasing };

    Kind kind = Kind::Identity;
    /// Phase of the V component; only used by Dephasing.
    double phi = 0;

    static NoiseEnsemble identity() {
        return {Kind::Identity, 0};
    }
    static NoiseEnsemble haar() {
        return {Kind::HaarUnitary, 0};
    }
    static NoiseEnsemble row_normalized() {
        return {Kind::RowNormalizedGeneral, 0};
    }
    static NoiseEnsemble dephasing(double phi) {
        return {Kind::Dephasing, phi};
    }

    /// "identity", "haar", "general", or "dephasing:<phi>".
    static NoiseEnsemble parse(std::string_view text);
    std::string name() const;
};

/// Deterministic in (ensemble, seed). The seed drives a std::mt19937_64.
NoiseParams sample_noise(const NoiseEnsemble &ensemble, std::uint64_t seed);

/// Applies `p` at every mode on each of `channels`.
PhotonState apply_collective_noise(const PhotonState &s, const NoiseParams &p,
                                   std::span<const std::string> channels);
PhotonState apply_collective_noise(const PhotonState &s, const NoiseParams &p, std::string_view channel);

/// splitmix64 finalizer. Used to derive independent per-item seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

}  // namespace serq

#endif
