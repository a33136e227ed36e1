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

#ifndef SERQ_GOLDEN_H
#define SERQ_GOLDEN_H

#include <string>
#include <vector>

#include "serq/builders.h"
#include "serq/collective_noise.h"
#include "serq/photon_state.h"

namespace serq {

// Closed-form states of the scheme and checks of simulated circuits against them.
//
// The closed forms follow the surface-phase beam splitter convention. Under the symmetric
// convention the second group differs by a phase flip of the encoded qubit and the decoder's
// long arm by a sign, so those checks compare each group up to a global phase and a Pauli frame
// on (alpha, beta).

/// Encoder output on "fiber" after collective noise `noise`:
///   group 1, ticks t = 0..N-1:        c_t (d1 |H> + g1 |V>)
///   group 2, ticks dT + t:        -i c_t (d2 |H> + g2 |V>)
/// with c_t = alpha/sqrt(N) for even t and beta/sqrt(N) for odd t.
PhotonState encoded_closed_form(const QubitSpec &q, const EncoderSpec &spec,
                                const NoiseParams &noise = NoiseParams::identity());

/// The port-1 group as it reaches the decoder, unnormalized: alpha(H_0 + H_2) + beta(H_1 + H_3).
PhotonState interferometer_input(const QubitSpec &q);

/// Expected arms of the decoder's output interferometer just before the final PBS for
/// interferometer_input(q):
///   short: (alpha(V_0 + V_2) + beta(V_1 + V_3))/sqrt2
///   long:  (alpha(H_1 + H_3) + beta(H_2 + H_4))/sqrt2
PhotonState interferometer_front_closed_form(const QubitSpec &q);

struct GoldenResult {
    std::string name;
    double max_deviation = 0;
    bool passed = false;
    /// Worst mode, or the frames used for symmetric comparisons.
    std::string detail;
};

inline constexpr double kGoldenTolerance = 1e-12;

/// Runs `encoder` on q and compares against encoded_closed_form.
GoldenResult check_encoder_output(const Circuit &encoder, const EncoderSpec &spec, const QubitSpec &q);
/// Runs `encoder`, applies `noise` on the fiber, compares against encoded_closed_form(q, spec, noise).
GoldenResult check_noisy_state(const Circuit &encoder, const EncoderSpec &spec, const QubitSpec &q,
                               const NoiseParams &noise);
/// Runs `decoder` minus its final PBS on interferometer_input(q) and compares the arms.
GoldenResult check_interferometer_front(const Circuit &decoder, const DecoderSpec &spec, const QubitSpec &q);

}  // namespace serq

#endif
