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

#include "serq/builders.h"

#include <algorithm>

namespace serq {

namespace {

Placement place(Element e, std::vector<std::string> in, std::vector<std::string> out) {
    return Placement{std::move(e), std::move(in), std::move(out)};
}

std::string s(std::string_view v) {
    return std::string(v);
}

}  // namespace

void EncoderSpec::validate() const {
    if (stages < 1 || stages > 20) {
        throw std::invalid_argument("encoder stages must be in [1, 20], got " + std::to_string(stages));
    }
    if (dT < 2 * bins()) {
        throw std::invalid_argument("group delay dT=" + std::to_string(dT) + " lets the groups overlap; need dT >= " +
                                    std::to_string(2 * bins()) + " for stages=" + std::to_string(stages));
    }
}

EncoderSpec EncoderSpec::for_stages(int stages, BsConvention convention) {
    EncoderSpec spec{stages, kDefaultGroupDelay, convention};
    if (stages >= 1 && stages <= 20) {
        spec.dT = std::max(kDefaultGroupDelay, 2 * spec.bins());
    }
    return spec;
}

void DecoderSpec::validate() const {
    if (dTprime < 0) {
        throw std::invalid_argument("dTprime must be >= 0, got " + std::to_string(dTprime));
    }
}

void check_compatible(const EncoderSpec &enc, const DecoderSpec &dec) {
    enc.validate();
    dec.validate();
    // After the decoder a group occupies ticks [0, N] relative to its start.
    if (dec.dTprime != 0 && dec.dTprime <= enc.bins()) {
        throw std::invalid_argument("dTprime=" + std::to_string(dec.dTprime) + " must be 0 or > " +
                                    std::to_string(enc.bins()) + " so that delayed groups do not overlap");
    }
}

Circuit build_encoder(const EncoderSpec &spec) {
    spec.validate();
    const std::string in = s(kEncoderInput), p1 = s(kPort1), p2 = s(kPort2), vac = s(kVacuum);
    Circuit c;
    c.input = in;
    auto &e = c.elements;
    e.push_back(place(PolarizingBeamSplitter{}, {in, vac}, {"S", "L"}));
    e.push_back(place(HalfWavePlate{}, {"L"}, {"L"}));
    e.push_back(place(PhaseShifter{kEncoderPhase}, {"L"}, {"L"}));
    e.push_back(place(Delay{1}, {"L"}, {"L"}));
    e.push_back(place(BeamSplitter{spec.convention}, {"S", "L"}, {p1, p2}));
    for (int k = 1; k <= spec.stages; k++) {
        Tick interval = Tick{1} << k;
        e.push_back(place(TimeBinSplitter{interval}, {p1}, {p1}));
        e.push_back(place(TimeBinSplitter{interval}, {p2}, {p2}));
    }
    e.push_back(place(HalfWavePlate{}, {p2}, {p2}));
    e.push_back(place(Delay{spec.dT}, {p2}, {p2}));
    e.push_back(place(PolarizingBeamSplitter{}, {p1, p2}, {s(kFiber), "dark"}));
    c.outputs = {s(kFiber), "dark"};
    c.validate();
    return c;
}

Circuit build_decoder(const DecoderSpec &spec) {
    spec.validate();
    const std::string vac = s(kVacuum), shrt = s(kShortArm), lng = s(kLongArm);
    Circuit c;
    c.input = s(kFiber);
    auto &e = c.elements;
    e.push_back(place(PolarizingBeamSplitter{}, {c.input, vac}, {"h", "v"}));
    e.push_back(place(Delay{spec.dTprime}, {"v"}, {"v"}));
    e.push_back(place(PolarizingBeamSplitter{}, {"h", "v"}, {"m", "idle"}));
    e.push_back(place(BeamSplitter{spec.convention}, {"m", vac}, {shrt, lng}));
    e.push_back(place(HalfWavePlate{}, {shrt}, {shrt}));
    e.push_back(place(PhaseShifter{kDecoderPhase}, {lng}, {lng}));
    e.push_back(place(Delay{1}, {lng}, {lng}));
    // Port 5 collects H from the long arm and V from the short arm.
    e.push_back(place(PolarizingBeamSplitter{}, {lng, shrt}, {s(kPort5), s(kPort6)}));
    c.outputs = {"idle", s(kPort5), s(kPort6)};
    c.validate();
    return c;
}

std::vector<Placement> physical_mzi(const std::string &in, const std::string &out, const std::string &leak,
                                    Tick ticks, BsConvention convention) {
    std::string a = in + "~s", b = in + "~l";
    return {
        place(BeamSplitter{convention}, {in, s(kVacuum)}, {a, b}),
        place(Delay{ticks}, {b}, {b}),
        place(BeamSplitter{convention}, {a, b}, {out, leak}),
    };
}

}  // namespace serq
