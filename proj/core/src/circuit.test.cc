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
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oracle/random_circuits.h"
#include "serq/builders.h"

using namespace serq;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Parses `text`, expecting a CircuitError whose message starts with "line <line>: " and
/// contains `needle`.
void expect_diagnostic(const std::string &text, int line, const std::string &needle) {
    try {
        parse_circuit(text);
    } catch (const CircuitError &e) {
        std::string msg = e.what();
        EXPECT_EQ(msg.rfind("line " + std::to_string(line) + ": ", 0), 0u) << text << "\n-> " << msg;
        EXPECT_NE(msg.find(needle), std::string::npos) << text << "\n-> " << msg;
        return;
    }
    ADD_FAILURE() << "accepted malformed circuit:\n" << text;
}

}  // namespace

TEST(circuit, empty_circuit_is_identity) {
    Circuit c{"in", {}, {"in"}};
    ASSERT_NO_THROW(c.validate());
    std::mt19937_64 rng(1);
    PhotonState s = serq_oracle::random_state(rng, "in");
    ASSERT_EQ(run(c, s).max_deviation(s), 0);
}

TEST(circuit, single_line_parses) {
    Circuit c = parse_circuit("pbs in -> s l");
    ASSERT_EQ(c.input, "in");
    ASSERT_EQ(c.elements.size(), 1u);
    ASSERT_EQ(c.elements[0].inputs, (std::vector<std::string>{"in", "_"}));
    ASSERT_EQ(c.elements[0].outputs, (std::vector<std::string>{"s", "l"}));
    ASSERT_EQ(c.outputs, (std::vector<std::string>{"s", "l"}));
}

TEST(circuit, run_rejects_foreign_input) {
    Circuit c = parse_circuit("input a\nhwp a -> b\noutput b\n");
    PhotonState s;
    s.add("z", Polarization::H, 0, 1);
    ASSERT_THROW(run(c, s), CircuitError);
}

TEST(circuit, run_is_linear) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int k = 0; k < 100; k++) {
        Circuit c = parse_circuit(serq_oracle::random_circuit_text(rng, false));
        PhotonState s1 = serq_oracle::random_state(rng, c.input);
        PhotonState s2 = serq_oracle::random_state(rng, c.input);
        Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
        PhotonState lhs, rhs;
        try {
            lhs = run(c, a * s1 + b * s2);
            rhs = a * run(c, s1) + b * run(c, s2);
        } catch (const ConventionViolation &) {
            continue;  // surface-phase splitter hit an overlapping input; not a linearity question
        }
        ASSERT_LT(lhs.max_deviation(rhs), 1e-12);
    }
}

TEST(circuit, lossless_chains_conserve_norm) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 1000; k++) {
        Circuit c = parse_circuit(serq_oracle::random_circuit_text(rng, true));
        PhotonState s = serq_oracle::random_state(rng, c.input);
        ASSERT_NEAR(run(c, s).norm_sq(), 1, 1e-12);
    }
}

TEST(circuit, print_parse_fixed_point) {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 50; k++) {
        std::string text = serq_oracle::random_circuit_text(rng, k % 2 == 0);
        Circuit once = parse_circuit(text);
        std::string printed = print_circuit(once);
        Circuit twice = parse_circuit(printed);
        ASSERT_EQ(once, twice) << text << "\n---\n" << printed;
        ASSERT_EQ(print_circuit(twice), printed);
    }
}

TEST(circuit, builders_round_trip) {
    for (auto conv : {BsConvention::Symmetric, BsConvention::PaperSurfacePhases}) {
        for (int n = 1; n <= 4; n++) {
            Circuit enc = build_encoder(EncoderSpec::for_stages(n, conv));
            ASSERT_EQ(parse_circuit(print_circuit(enc)), enc);
        }
        Circuit dec = build_decoder({5, conv});
        ASSERT_EQ(parse_circuit(print_circuit(dec)), dec);
    }
}

TEST(circuit, shipped_files_match_builders) {
    Circuit enc = parse_circuit(read_file(std::string(SERQ_CIRCUIT_DIR) + "/encoder_n1.circ"));
    ASSERT_EQ(enc, build_encoder({1, kDefaultGroupDelay, BsConvention::PaperSurfacePhases}));
    Circuit dec = parse_circuit(read_file(std::string(SERQ_CIRCUIT_DIR) + "/decoder.circ"));
    ASSERT_EQ(dec, build_decoder({0, BsConvention::PaperSurfacePhases}));
}

TEST(circuit, prefix_and_live_channels) {
    Circuit dec = build_decoder({});
    Circuit front = dec.prefix(dec.elements.size() - 1);
    ASSERT_NO_THROW(front.validate());
    ASSERT_EQ(front.elements.size(), dec.elements.size() - 1);
    auto live = front.outputs;
    std::sort(live.begin(), live.end());
    ASSERT_EQ(live, (std::vector<std::string>{"idle", "long", "short"}));
}

TEST(circuit, diagnostics) {
    expect_diagnostic("input a\nfrobnicate a -> b\noutput b\n", 2, "unknown element kind 'frobnicate'");
    expect_diagnostic("input a\nbs a -> b\noutput b\n", 2, "takes 2 input(s)");
    expect_diagnostic("input a\nhwp a b -> c d\noutput c d\n", 2, "takes 1 input(s)");
    expect_diagnostic("input a\nhwp q -> b\noutput b\n", 2, "undeclared channel 'q'");
    expect_diagnostic("input a\nhwp b -> c\nhwp a -> b\noutput c\n", 2, "cyclic wiring");
    expect_diagnostic("input a\nhwp a -> b\noutput b z\n", 3, "undeclared channel 'z'");
    expect_diagnostic("input a\npbs a _ -> b c\noutput b\n", 3, "'c' is left dangling");
    expect_diagnostic("input a\nhwp a b\noutput b\n", 2, "missing '->'");
    expect_diagnostic("input a\nhwp a -> b -> c\noutput c\n", 2, "more than one '->'");
    expect_diagnostic("input a\nphase a -> b\noutput b\n", 2, "requires key 'phi'");
    expect_diagnostic("input a\nphase a -> b phi=x\noutput b\n", 2, "bad number 'x'");
    expect_diagnostic("input a\nphase a -> b phi=1 phi=2\noutput b\n", 2, "duplicate key 'phi'");
    expect_diagnostic("input a\nhwp a -> b ticks=2\noutput b\n", 2, "unknown key 'ticks'");
    expect_diagnostic("input a\ndelay a -> b ticks=-1\noutput b\n", 2, "ticks must be >= 0");
    expect_diagnostic("input a\nsplit a -> b ticks=0\noutput b\n", 2, "ticks must be >= 1");
    expect_diagnostic("input a\nsplit a -> b ticks=1.5\noutput b\n", 2, "bad integer");
    expect_diagnostic("input a\nbs a _ -> b c conv=weird\noutput b c\n", 2, "weird");
    expect_diagnostic("input a\nnoise a -> b params=1,0,0\noutput b\n", 2, "exactly 8 numbers");
    expect_diagnostic("input a\nnoise a -> b params=1,0,1,0,0,0,1,0\noutput b\n", 2, "noise params");
    expect_diagnostic("input a\npbs a _ -> _ c\noutput c\n", 2, "vacuum label");
    expect_diagnostic("input a\npbs a _ -> b b\noutput b\n", 2, "wired twice");
    expect_diagnostic("input a\ninput b\n", 2, "duplicate input line");
    expect_diagnostic("input a\nhwp a -> b\noutput b\nhwp b -> c\n", 4, "content after the output line");
    expect_diagnostic("hwp a -> b\ninput a\noutput b\n", 2, "must precede");
    expect_diagnostic("# nothing\n\n", 2, "empty circuit");
    expect_diagnostic("input a\npbs a _ -> b c\nhwp b -> c\noutput c\n", 3, "still carrying");
}

TEST(circuit, malformed_inputs_never_crash) {
    // Random byte-level mutations of valid texts: the parser either accepts or throws
    // CircuitError with a line number.
    std::mt19937_64 rng(5);
    const std::string alphabet = "abc_->=#\n \t0123456789.,pbshwdelaynoisplit";
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    for (int k = 0; k < 2000; k++) {
        std::string text = serq_oracle::random_circuit_text(rng, false, 6);
        std::uniform_int_distribution<int> edits(1, 4);
        for (int e = edits(rng); e > 0; e--) {
            std::uniform_int_distribution<size_t> at(0, text.size() - 1);
            size_t pos = at(rng);
            switch (rng() % 3) {
                case 0:
                    text.erase(pos, 1);
                    break;
                case 1:
                    text.insert(pos, 1, alphabet[pick(rng)]);
                    break;
                default:
                    text[pos] = alphabet[pick(rng)];
            }
            if (text.empty()) {
                text = "x";
            }
        }
        try {
            parse_circuit(text);
        } catch (const CircuitError &e) {
            ASSERT_EQ(std::string(e.what()).rfind("line ", 0), 0u) << text << "\n-> " << e.what();
        }
    }
}
