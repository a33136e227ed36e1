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

#ifndef SERQ_CIRCUIT_H
#define SERQ_CIRCUIT_H

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "serq/collective_noise.h"
#include "serq/optical_elements.h"
#include "serq/photon_state.h"

namespace serq {

struct BeamSplitter {
    BsConvention convention = BsConvention::Symmetric;
    bool operator==(const BeamSplitter &) const = default;
};
struct PolarizingBeamSplitter {
    bool operator==(const PolarizingBeamSplitter &) const = default;
};
struct HalfWavePlate {
    bool operator==(const HalfWavePlate &) const = default;
};
struct PhaseShifter {
    double phi = 0;
    bool operator==(const PhaseShifter &) const = default;
};
struct Delay {
    Tick ticks = 0;
    bool operator==(const Delay &) const = default;
};
struct TimeBinSplitter {
    Tick ticks = 1;
    bool operator==(const TimeBinSplitter &) const = default;
};
struct CollectiveNoise {
    NoiseParams params;
    bool operator==(const CollectiveNoise &) const = default;
};

using Element = std::variant<BeamSplitter, PolarizingBeamSplitter, HalfWavePlate, PhaseShifter, Delay,
                             TimeBinSplitter, CollectiveNoise>;

/// Keyword used in the text format ("bs", "pbs", "hwp", "phase", "delay", "split", "noise").
std::string_view element_keyword(const Element &e);
/// 2 for the beam splitters, 1 for everything else. Inputs and outputs always match.
size_t element_arity(const Element &e);
/// True when the element preserves norm on every input. The surface-phase beam splitter, the
/// time-bin splitter and non-unitary noise only do so on restricted inputs.
bool is_lossless(const Element &e);

/// An element wired to concrete channels. `line` is the 1-based source line when parsed from
/// text and 0 otherwise; it does not take part in equality.
struct Placement {
    Element element;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    int line = 0;

    bool operator==(const Placement &other) const {
        return element == other.element && inputs == other.inputs && outputs == other.outputs;
    }
};

struct CircuitError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An ordered chain of placements from one input channel to a set of output channels.
///
/// Wiring rules, checked by validate():
///  - every input of an element is live (the declared input or an earlier output) or the
///    vacuum label "_";
///  - an element consumes its inputs; its outputs become live and may not clobber a channel that
///    is still live from elsewhere;
///  - the declared outputs are exactly the channels live after the last element.
struct Circuit {
    std::string input;
    std::vector<Placement> elements;
    std::vector<std::string> outputs;
    /// Source lines of the input/output declarations when parsed; excluded from equality.
    int input_line = 0;
    int output_line = 0;

    bool operator==(const Circuit &other) const {
        return input == other.input && elements == other.elements && outputs == other.outputs;
    }

    /// Throws CircuitError describing the first wiring problem, prefixed with "line N: " for
    /// parsed placements.
    void validate() const;
    /// The circuit consisting of the first `count` elements, with outputs recomputed.
    Circuit prefix(size_t count) const;
    /// Channels live after the first `count` elements, in first-produced order.
    std::vector<std::string> live_channels_after(size_t count) const;
};

/// Applies a single placement.
PhotonState apply_placement(const PhotonState &s, const Placement &p);

/// Runs the circuit on `s`, which must be supported on the circuit's input channel. Element
/// errors (e.g. ConventionViolation) propagate.
PhotonState run(const Circuit &c, const PhotonState &s);

/// Canonical text form; parse_circuit(print_circuit(c)) == c.
std::string print_circuit(const Circuit &c);

/// Parses the line-oriented circuit format:
///
///     # comment
///     input <channel>
///     <element> <in...> -> <out...> [phi=<radians>] [ticks=<int>] [conv=symmetric|paper]
///                                   [params=<8 comma separated floats>]
///     output <channel...>
///
/// "_" names a vacuum input; a beam splitter given one input takes vacuum on the second. Without
/// an input line the first element's first input is the circuit input, and without an output
/// line the outputs are the channels left live.
///
/// Throws CircuitError with a "line N: " prefix on malformed input.
Circuit parse_circuit(std::string_view text);

}  // namespace serq

#endif
