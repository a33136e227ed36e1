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

#ifndef SERQ_BUILDERS_H
#define SERQ_BUILDERS_H

#include <numbers>
#include <string>
#include <vector>

#include "serq/circuit.h"

namespace serq {

// Channel names used by the built-in encoder and decoder.
inline constexpr std::string_view kEncoderInput = "in";
inline constexpr std::string_view kFiber = "fiber";
inline constexpr std::string_view kPort1 = "1";
inline constexpr std::string_view kPort2 = "2";
inline constexpr std::string_view kPort5 = "5";
inline constexpr std::string_view kPort6 = "6";
inline constexpr std::string_view kShortArm = "short";
inline constexpr std::string_view kLongArm = "long";

/// Phase on the long arm of the encoder's polarization split.
inline constexpr double kEncoderPhase = 3 * std::numbers::pi / 2;
/// Phase on the long arm of the decoder's output interferometer.
inline constexpr double kDecoderPhase = std::numbers::pi / 2;
/// Group delay used when nothing else is asked for, as long as the groups fit.
inline constexpr Tick kDefaultGroupDelay = 64;

struct EncoderSpec {
    /// Depth of the time-bin splitter cascade. Each port carries N = 2^(stages+1) bins.
    int stages = 1;
    /// Delay between the two encoded groups, in ticks.
    Tick dT = kDefaultGroupDelay;
    BsConvention convention = BsConvention::Symmetric;

    /// Number of bins per group, N. The encoder emits 2N wavepackets.
    Tick bins() const {
        return Tick{1} << (stages + 1);
    }
    /// Throws std::invalid_argument unless 1 <= stages <= 20 and dT >= 2N.
    void validate() const;

    /// Spec with dT = max(64, 2N).
    static EncoderSpec for_stages(int stages, BsConvention convention = BsConvention::Symmetric);
};

struct DecoderSpec {
    /// Extra delay of the V branch inside the decoder. 0 is the practical choice.
    Tick dTprime = 0;
    BsConvention convention = BsConvention::Symmetric;

    void validate() const;
};

/// Throws std::invalid_argument when the decoder's V-branch delay would overlap a group,
/// i.e. unless dTprime == 0 or dTprime > N.
void check_compatible(const EncoderSpec &enc, const DecoderSpec &dec);

/// Encoder: polarization split (V arm rotated to H, phase 3pi/2, one tick late), 50/50 beam
/// splitter into ports 1 and 2, a cascade of time-bin splitters with intervals 2, 4, ..., 2^stages
/// ticks on both ports, port 2 rotated to V and delayed by dT, then both ports merged onto "fiber"
/// by a PBS. Input channel "in"; outputs "fiber" and the merge's unused port "dark".
Circuit build_encoder(const EncoderSpec &spec);

/// Decoder: PBS separating H and V with the V branch delayed by dTprime and recombined, then the
/// output interferometer (beam splitter, short arm HWP, long arm phase pi/2 and one tick) closed
/// by a PBS onto ports 5 and 6. Input channel "fiber".
Circuit build_decoder(const DecoderSpec &spec);

/// A physical unbalanced Mach-Zehnder interferometer built from two beam splitters. Unlike the
/// ideal TimeBinSplitter, half of the input leaks into `leak`.
std::vector<Placement> physical_mzi(const std::string &in, const std::string &out, const std::string &leak,
                                    Tick ticks, BsConvention convention = BsConvention::Symmetric);

}  // namespace serq

#endif
