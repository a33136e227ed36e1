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

#ifndef SERQ_OPTICAL_ELEMENTS_H
#define SERQ_OPTICAL_ELEMENTS_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "serq/photon_state.h"

namespace serq {

/// Channel label for an unused (vacuum) input port. Never carries amplitude.
inline constexpr std::string_view kVacuum = "_";

/// Phase conventions for the 50/50 beam splitter. Both map (in1, in2) -> (out1, out2).
///
/// Symmetric:          out1 = (in1 + i in2)/sqrt2,   out2 = (i in1 + in2)/sqrt2     (unitary)
/// PaperSurfacePhases: out1 = (in1 + i in2)/sqrt2,   out2 = (-i in1 + in2)/sqrt2
///
/// PaperSurfacePhases gives the reflection off the first surface a phase of +i and off the
/// second a phase of -i. Its matrix has determinant zero, so it is only lossless when the two
/// inputs never occupy the same (polarization, tick).
enum class BsConvention { Symmetric, PaperSurfacePhases };

std::string_view convention_name(BsConvention c);  // "symmetric" / "paper"
BsConvention parse_convention(std::string_view text);

/// 2x2 transfer matrix of the convention, row-major: out_r = sum_c m[r][c] in_c.
struct BsMatrix {
    Complex m[2][2];
};
BsMatrix bs_matrix(BsConvention c);

/// Raised when PaperSurfacePhases would interfere two inputs on the same mode.
struct ConventionViolation : std::domain_error {
    using std::domain_error::domain_error;
};

/// Polarizing beam splitter: H transmits (in1->out1, in2->out2), V reflects (in1->out2,
/// in2->out1). No reflection phase.
PhotonState apply_pbs(const PhotonState &s, std::string_view in1, std::string_view in2, std::string_view out1,
                      std::string_view out2);

PhotonState apply_bs(const PhotonState &s, std::string_view in1, std::string_view in2, std::string_view out1,
                     std::string_view out2, BsConvention convention);

/// 90 degree half wave plate: swaps H and V at every tick (sigma_x).
PhotonState apply_hwp(const PhotonState &s, std::string_view in, std::string_view out);
PhotonState apply_hwp(const PhotonState &s, std::string_view channel);

/// Multiplies every amplitude on the channel by e^{i phi}.
PhotonState apply_phase(const PhotonState &s, std::string_view in, std::string_view out, double phi);
PhotonState apply_phase(const PhotonState &s, std::string_view channel, double phi);

/// Shifts every amplitude on the channel by `ticks` (>= 0).
PhotonState apply_delay(const PhotonState &s, std::string_view in, std::string_view out, Tick ticks);
PhotonState apply_delay(const PhotonState &s, std::string_view channel, Tick ticks);

/// Ideal time-bin splitter: a at t becomes a/sqrt2 at t and a/sqrt2 at t + ticks.
/// Requires ticks >= 1. Norm is conserved exactly when no two amplitudes on the same
/// (channel, polarization) are `ticks` apart, e.g. when the input spans fewer than `ticks` ticks.
/// That always holds inside the encoder cascade; otherwise the overlapping halves interfere.
PhotonState apply_timebin_splitter(const PhotonState &s, std::string_view in, std::string_view out, Tick ticks);
PhotonState apply_timebin_splitter(const PhotonState &s, std::string_view channel, Tick ticks);

/// Moves every amplitude on `from` to `to` unchanged.
PhotonState relabel(const PhotonState &s, std::string_view from, std::string_view to);

}  // namespace serq

#endif
