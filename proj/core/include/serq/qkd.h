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

#ifndef SERQ_QKD_H
#define SERQ_QKD_H

#include <cstdint>
#include <string>

#include "serq/collective_noise.h"
#include "serq/optical_elements.h"

namespace serq {

struct Bb84Config {
    std::uint64_t pulses = 10000;
    int stages = 1;
    NoiseEnsemble ensemble = NoiseEnsemble::haar();
    /// A fresh noise sample is drawn every `refresh_period` pulses.
    std::uint64_t refresh_period = 1;
    /// Detector efficiency in (0, 1].
    double eta = 1.0;
    std::uint64_t seed = 1;
    BsConvention convention = BsConvention::Symmetric;
    Tick dT = 0;  // 0 picks the encoder default for `stages`
    Tick dTprime = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct Bb84Stats {
    std::uint64_t sent = 0;
    /// Clicks in an accepted bin.
    std::uint64_t detected = 0;
    /// Clicks in a discarded bin (first or last bin of a branch).
    std::uint64_t rejected = 0;
    std::uint64_t sifted = 0;
    std::uint64_t errors = 0;
    double qber = 0;
    double detection_rate = 0;

    /// "pulses,sifted,errors,qber,detection_rate"
    static std::string csv_header();
    std::string csv_row() const;
    std::string summary() const;
};

/// BB84 over the collective-noise channel protected by the encoder/decoder pair.
///
/// Per pulse: Alice picks a basis (H/V or +-45) and a bit, the photon is propagated through
/// encoder, noise and decoder, a click is drawn from the exact bin probabilities scaled by eta,
/// and a click in an accepted bin is corrected and measured in Bob's random basis. Pulse i draws
/// from std::mt19937_64(mix_seed(seed, i)), so results do not depend on evaluation order.
Bb84Stats simulate_bb84(const Bb84Config &cfg);

/// eta * (N - 1)/N with N = 2^(stages + 1).
double effective_efficiency(int stages, double eta);

}  // namespace serq

#endif
