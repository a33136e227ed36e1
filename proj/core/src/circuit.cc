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

#include "serq/circuit.h"

#include <algorithm>
#include <cmath>

namespace serq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string position(const Placement &p, size_t index) {
    if (p.line > 0) {
        return "line " + std::to_string(p.line);
    }
    return "element #" + std::to_string(index + 1);
}

std::string where(const Placement &p, size_t index) {
    return position(p, index) + ": ";
}

std::string where_line(int line, std::string_view fallback) {
    if (line > 0) {
        return "line " + std::to_string(line) + ": ";
    }
    return std::string(fallback) + ": ";
}

bool contains(const std::vector<std::string> &v, std::string_view x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

void check_params(const Placement &p, const std::string &loc) {
    std::visit(overloaded{
                   [&](const PhaseShifter &e) {
                       if (!std::isfinite(e.phi)) {
                           throw CircuitError(loc + "phase angle must be finite");
                       }
                   },
                   [&](const Delay &e) {
                       if (e.ticks < 0) {
                           throw CircuitError(loc + "delay ticks must be >= 0, got " + std::to_string(e.ticks));
                       }
                   },
                   [&](const TimeBinSplitter &e) {
                       if (e.ticks < 1) {
                           throw CircuitError(loc + "split ticks must be >= 1, got " + std::to_string(e.ticks));
                       }
                   },
                   [&](const CollectiveNoise &e) {
                       if (!e.params.is_valid()) {
                           throw CircuitError(loc + "noise params violate |d|^2 + |g|^2 = 1");
                       }
                   },
                   [](const auto &) {},
               },
               p.element);
}

}  // namespace

std::string_view element_keyword(const Element &e) {
    return std::visit(overloaded{
                          [](const BeamSplitter &) { return std::string_view("bs"); },
                          [](const PolarizingBeamSplitter &) { return std::string_view("pbs"); },
                          [](const HalfWavePlate &) { return std::string_view("hwp"); },
                          [](const PhaseShifter &) { return std::string_view("phase"); },
                          [](const Delay &) { return std::string_view("delay"); },
                          [](const TimeBinSplitter &) { return std::string_view("split"); },
                          [](const CollectiveNoise &) { return std::string_view("noise"); },
                      },
                      e);
}

size_t element_arity(const Element &e) {
    return std::holds_alternative<BeamSplitter>(e) || std::holds_alternative<PolarizingBeamSplitter>(e) ? 2 : 1;
}

bool is_lossless(const Element &e) {
    if (const auto *bs = std::get_if<BeamSplitter>(&e)) {
        return bs->convention == BsConvention::Symmetric;
    }
    if (const auto *n = std::get_if<CollectiveNoise>(&e)) {
        return n->params.is_unitary();
    }
    return !std::holds_alternative<TimeBinSplitter>(e);
}

void Circuit::validate() const {
    if (input.empty() || input == kVacuum) {
        throw CircuitError(where_line(input_line, "input") + "circuit needs an input channel");
    }
    std::vector<std::string> live{input};
    for (size_t k = 0; k < elements.size(); k++) {
        const Placement &p = elements[k];
        std::string loc = where(p, k);
        size_t arity = element_arity(p.element);
        std::string_view kw = element_keyword(p.element);
        if (p.inputs.size() != arity || p.outputs.size() != arity) {
            throw CircuitError(loc + "'" + std::string(kw) + "' takes " + std::to_string(arity) + " input(s) and " +
                               std::to_string(arity) + " output(s), got " + std::to_string(p.inputs.size()) +
                               " and " + std::to_string(p.outputs.size()));
        }
        check_params(p, loc);
        if (arity == 2 && p.inputs[0] == p.inputs[1] && p.inputs[0] != kVacuum) {
            throw CircuitError(loc + "input channel '" + p.inputs[0] + "' wired twice");
        }
        if (arity == 2 && p.outputs[0] == p.outputs[1]) {
            throw CircuitError(loc + "output channel '" + p.outputs[0] + "' wired twice");
        }
        for (const auto &in : p.inputs) {
            if (in == kVacuum || contains(live, in)) {
                continue;
            }
            for (size_t j = k + 1; j < elements.size(); j++) {
                if (contains(elements[j].outputs, in)) {
                    throw CircuitError(loc + "cyclic wiring: channel '" + in +
                                       "' is consumed before it is produced at " + position(elements[j], j));
                }
            }
            throw CircuitError(loc + "undeclared channel '" + in + "'");
        }
        for (const auto &in : p.inputs) {
            std::erase(live, in);
        }
        for (const auto &out : p.outputs) {
            if (out == kVacuum) {
                throw CircuitError(loc + "the vacuum label '_' cannot be an output");
            }
            if (contains(live, out)) {
                throw CircuitError(loc + "channel '" + out + "' is written while still carrying another signal");
            }
            live.push_back(out);
        }
    }
    std::string loc = where_line(output_line, "output");
    for (const auto &out : outputs) {
        if (std::count(outputs.begin(), outputs.end(), out) > 1) {
            throw CircuitError(loc + "output channel '" + out + "' listed twice");
        }
        if (!contains(live, out)) {
            throw CircuitError(loc + "undeclared channel '" + out + "' in output list");
        }
    }
    for (const auto &ch : live) {
        if (!contains(outputs, ch)) {
            throw CircuitError(loc + "channel '" + ch + "' is left dangling; list it as an output");
        }
    }
}

std::vector<std::string> Circuit::live_channels_after(size_t count) const {
    std::vector<std::string> live{input};
    for (size_t k = 0; k < count && k < elements.size(); k++) {
        for (const auto &in : elements[k].inputs) {
            std::erase(live, in);
        }
        for (const auto &out : elements[k].outputs) {
            live.push_back(out);
        }
    }
    return live;
}

Circuit Circuit::prefix(size_t count) const {
    count = std::min(count, elements.size());
    Circuit c;
    c.input = input;
    c.elements.assign(elements.begin(), elements.begin() + static_cast<std::ptrdiff_t>(count));
    c.outputs = live_channels_after(count);
    return c;
}

PhotonState apply_placement(const PhotonState &s, const Placement &p) {
    const auto &in = p.inputs;
    const auto &out = p.outputs;
    return std::visit(overloaded{
                          [&](const BeamSplitter &e) { return apply_bs(s, in[0], in[1], out[0], out[1], e.convention); },
                          [&](const PolarizingBeamSplitter &) { return apply_pbs(s, in[0], in[1], out[0], out[1]); },
                          [&](const HalfWavePlate &) { return apply_hwp(s, in[0], out[0]); },
                          [&](const PhaseShifter &e) { return apply_phase(s, in[0], out[0], e.phi); },
                          [&](const Delay &e) { return apply_delay(s, in[0], out[0], e.ticks); },
                          [&](const TimeBinSplitter &e) { return apply_timebin_splitter(s, in[0], out[0], e.ticks); },
                          [&](const CollectiveNoise &e) {
                              return relabel(apply_collective_noise(s, e.params, in[0]), in[0], out[0]);
                          },
                      },
                      p.element);
}

PhotonState run(const Circuit &c, const PhotonState &s) {
    for (const auto &[mode, amp] : s) {
        if (mode.channel != c.input) {
            throw CircuitError("state has amplitude on channel '" + mode.channel + "' but the circuit input is '" +
                               c.input + "'");
        }
    }
    PhotonState cur = s;
    for (const auto &p : c.elements) {
        cur = apply_placement(cur, p);
    }
    return cur;
}

std::string print_circuit(const Circuit &c) {
    std::string out = "input " + c.input + "\n";
    for (const auto &p : c.elements) {
        out += element_keyword(p.element);
        for (const auto &in : p.inputs) {
            out += ' ';
            out += in;
        }
        out += " ->";
        for (const auto &o : p.outputs) {
            out += ' ';
            out += o;
        }
        std::visit(overloaded{
                       [&](const BeamSplitter &e) {
                           out += " conv=";
                           out += convention_name(e.convention);
                       },
                       [&](const PhaseShifter &e) { out += " phi=" + format_double(e.phi); },
                       [&](const Delay &e) { out += " ticks=" + std::to_string(e.ticks); },
                       [&](const TimeBinSplitter &e) { out += " ticks=" + std::to_string(e.ticks); },
                       [&](const CollectiveNoise &e) { out += " params=" + e.params.to_csv(); },
                       [](const auto &) {},
                   },
                   p.element);
        out += '\n';
    }
    out += "output";
    for (const auto &o : c.outputs) {
        out += ' ';
        out += o;
    }
    out += '\n';
    return out;
}

}  // namespace serq
