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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "serq/circuit.h"

namespace serq {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            i++;
        }
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            i++;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

class LineParser {
   public:
    explicit LineParser(int line) : prefix_("line " + std::to_string(line) + ": ") {
    }

    [[noreturn]] void fail(const std::string &msg) const {
        throw CircuitError(prefix_ + msg);
    }

    double parse_double(std::string_view key, std::string_view text) const {
        double v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
            fail("bad number '" + std::string(text) + "' for key '" + std::string(key) + "'");
        }
        return v;
    }

    Tick parse_ticks(std::string_view text) const {
        Tick v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            fail("bad integer '" + std::string(text) + "' for key 'ticks'");
        }
        return v;
    }

    NoiseParams parse_noise(std::string_view text) const {
        double v[8];
        size_t n = 0;
        while (true) {
            size_t comma = text.find(',');
            std::string_view item = text.substr(0, comma);
            if (n == 8) {
                fail("key 'params' takes exactly 8 numbers");
            }
            v[n++] = parse_double("params", item);
            if (comma == std::string_view::npos) {
                break;
            }
            text.remove_prefix(comma + 1);
        }
        if (n != 8) {
            fail("key 'params' takes exactly 8 numbers, got " + std::to_string(n));
        }
        return NoiseParams::from_floats(std::span<const double, 8>(v, 8));
    }

    Element make_element(std::string_view kind, const std::map<std::string, std::string_view> &keys) const {
        auto require = [&](const char *key) -> std::string_view {
            auto it = keys.find(key);
            if (it == keys.end()) {
                fail("'" + std::string(kind) + "' requires key '" + key + "'");
            }
            return it->second;
        };
        auto allow_only = [&](std::initializer_list<std::string_view> allowed) {
            for (const auto &[k, v] : keys) {
                if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
                    fail("unknown key '" + k + "' for '" + std::string(kind) + "'");
                }
            }
        };
        if (kind == "bs") {
            allow_only({"conv"});
            BeamSplitter bs;
            if (auto it = keys.find("conv"); it != keys.end()) {
                try {
                    bs.convention = parse_convention(it->second);
                } catch (const std::invalid_argument &e) {
                    fail(e.what());
                }
            }
            return bs;
        }
        if (kind == "pbs") {
            allow_only({});
            return PolarizingBeamSplitter{};
        }
        if (kind == "hwp") {
            allow_only({});
            return HalfWavePlate{};
        }
        if (kind == "phase") {
            allow_only({"phi"});
            return PhaseShifter{parse_double("phi", require("phi"))};
        }
        if (kind == "delay") {
            allow_only({"ticks"});
            return Delay{parse_ticks(require("ticks"))};
        }
        if (kind == "split") {
            allow_only({"ticks"});
            return TimeBinSplitter{parse_ticks(require("ticks"))};
        }
        if (kind == "noise") {
            allow_only({"params"});
            return CollectiveNoise{parse_noise(require("params"))};
        }
        fail("unknown element kind '" + std::string(kind) + "'");
    }

   private:
    std::string prefix_;
};

}  // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool seen_input = false;
    bool seen_output = false;
    int line_no = 0;
    while (!text.empty() || line_no == 0) {
        line_no++;
        size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_ws(line);
        if (tokens.empty()) {
            if (text.empty()) {
                break;
            }
            continue;
        }
        LineParser lp(line_no);
        if (seen_output) {
            lp.fail("content after the output line");
        }
        std::string_view head = tokens[0];
        if (head == "input") {
            if (seen_input) {
                lp.fail("duplicate input line");
            }
            if (!c.elements.empty()) {
                lp.fail("the input line must precede all elements");
            }
            if (tokens.size() != 2) {
                lp.fail("input line takes exactly one channel");
            }
            seen_input = true;
            c.input = std::string(tokens[1]);
            c.input_line = line_no;
            continue;
        }
        if (head == "output") {
            if (tokens.size() < 2) {
                lp.fail("output line needs at least one channel");
            }
            for (size_t i = 1; i < tokens.size(); i++) {
                c.outputs.emplace_back(tokens[i]);
            }
            seen_output = true;
            c.output_line = line_no;
            continue;
        }

        constexpr std::string_view kKinds[] = {"bs", "pbs", "hwp", "phase", "delay", "split", "noise"};
        if (std::find(std::begin(kKinds), std::end(kKinds), head) == std::end(kKinds)) {
            lp.fail("unknown element kind '" + std::string(head) + "'");
        }
        Placement p;
        p.line = line_no;
        size_t i = 1;
        for (; i < tokens.size() && tokens[i] != "->"; i++) {
            if (tokens[i].find('=') != std::string_view::npos) {
                lp.fail("expected '->' before key '" + std::string(tokens[i]) + "'");
            }
            p.inputs.emplace_back(tokens[i]);
        }
        if (i == tokens.size()) {
            lp.fail("missing '->' in '" + std::string(head) + "' line");
        }
        i++;
        for (; i < tokens.size() && tokens[i].find('=') == std::string_view::npos; i++) {
            if (tokens[i] == "->") {
                lp.fail("more than one '->'");
            }
            p.outputs.emplace_back(tokens[i]);
        }
        std::map<std::string, std::string_view> keys;
        for (; i < tokens.size(); i++) {
            std::string_view tok = tokens[i];
            size_t eq = tok.find('=');
            if (eq == std::string_view::npos) {
                lp.fail("unexpected token '" + std::string(tok) + "' after keys");
            }
            std::string key(tok.substr(0, eq));
            if (!keys.emplace(key, tok.substr(eq + 1)).second) {
                lp.fail("duplicate key '" + key + "'");
            }
        }
        p.element = lp.make_element(head, keys);
        size_t arity = element_arity(p.element);
        // A two-port element listed with one input takes vacuum on the other port.
        if (arity == 2 && p.inputs.size() == 1) {
            p.inputs.emplace_back(kVacuum);
        }
        if (p.inputs.size() != arity || p.outputs.size() != arity) {
            lp.fail("'" + std::string(head) + "' takes " + std::to_string(arity) + " input(s) and " +
                    std::to_string(arity) + " output(s), got " + std::to_string(p.inputs.size()) + " and " +
                    std::to_string(p.outputs.size()));
        }
        c.elements.push_back(std::move(p));
    }
    // A bare element chain is accepted: the input defaults to the first element's first input and
    // the outputs to whatever is live at the end.
    if (!seen_input) {
        if (c.elements.empty()) {
            throw CircuitError("line " + std::to_string(line_no) + ": empty circuit, expected 'input <channel>'");
        }
        c.input = c.elements.front().inputs.front();
        c.input_line = c.elements.front().line;
    }
    if (!seen_output) {
        c.outputs = c.live_channels_after(c.elements.size());
        c.output_line = line_no;
    }
    c.validate();
    return c;
}

}  // namespace serq
