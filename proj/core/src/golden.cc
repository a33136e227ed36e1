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

#include "serq/golden.h"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "serq/postselection.h"

namespace serq {

namespace {

constexpr Complex kI{0, 1};

/// A slice of a state compared as a unit: one channel (or all, when empty) over a tick window.
struct Group {
    std::optional<std::string> channel;
    TickRange window;

    PhotonState of(const PhotonState &s) const {
        return channel ? s.restrict(*channel, window) : s.restrict_ticks(window);
    }
};

std::string describe_worst(const PhotonState &actual, const PhotonState &expected) {
    const Mode *worst = nullptr;
    double dev = -1;
    auto consider = [&](const Mode &m) {
        double d = std::abs(actual.amplitude(m) - expected.amplitude(m));
        if (d > dev) {
            dev = d;
            worst = &m;
        }
    };
    for (const auto &[m, a] : actual) {
        consider(m);
    }
    for (const auto &[m, a] : expected) {
        consider(m);
    }
    if (worst == nullptr) {
        return "no modes";
    }
    return "worst mode " + worst->channel + "," + polarization_char(worst->pol) + "," + std::to_string(worst->t) +
           " simulated " + format_double(actual.amplitude(*worst).real()) + "+" +
           format_double(actual.amplitude(*worst).imag()) + "i expected " +
           format_double(expected.amplitude(*worst).real()) + "+" + format_double(expected.amplitude(*worst).imag()) +
           "i";
}

/// Compares the part of `actual` outside every group exactly against `expected`, and each group
/// up to a global phase and a Pauli frame on the qubit.
GoldenResult compare(std::string name, const PhotonState &actual, const QubitSpec &q,
                     const std::function<PhotonState(const QubitSpec &)> &expected_for, bool exact,
                     const std::vector<Group> &groups) {
    GoldenResult result;
    result.name = std::move(name);
    PhotonState expected = expected_for(q);
    if (exact) {
        result.max_deviation = actual.max_deviation(expected);
        result.passed = result.max_deviation < kGoldenTolerance;
        if (!result.passed) {
            result.detail = describe_worst(actual, expected);
        }
        return result;
    }

    // Anything not inside a group must still match exactly.
    PhotonState rest_actual = actual, rest_expected = expected;
    for (const auto &g : groups) {
        rest_actual += -1.0 * g.of(actual);
        rest_expected += -1.0 * g.of(expected);
    }
    result.max_deviation = rest_actual.max_deviation(rest_expected);

    for (const auto &g : groups) {
        PhotonState a = g.of(actual);
        double best = std::numeric_limits<double>::infinity();
        Correction best_frame = Correction::Identity;
        for (Correction frame : kAllCorrections) {
            auto framed = apply_correction(frame, {q.alpha, q.beta});
            PhotonState e = g.of(expected_for({framed[0], framed[1]}));
            // Align the global phase on the largest expected amplitude.
            Complex phase{1, 0};
            double largest = 0;
            for (const auto &[m, amp] : e) {
                if (std::abs(amp) > largest && std::abs(a.amplitude(m)) > 0) {
                    largest = std::abs(amp);
                    Complex ratio = a.amplitude(m) / amp;
                    phase = ratio / std::abs(ratio);
                }
            }
            double dev = a.max_deviation(phase * e);
            if (dev < best) {
                best = dev;
                best_frame = frame;
            }
        }
        result.max_deviation = std::max(result.max_deviation, best);
        if (!result.detail.empty()) {
            result.detail += "; ";
        }
        result.detail += (g.channel ? "channel " + *g.channel + " " : std::string()) + "ticks [" +
                         std::to_string(g.window.lo) + "," + std::to_string(g.window.hi) + "] frame " +
                         std::string(correction_name(best_frame));
    }
    result.passed = result.max_deviation < kGoldenTolerance;
    return result;
}

std::vector<Group> encoder_groups(const EncoderSpec &spec) {
    Tick n = spec.bins();
    return {{std::nullopt, {0, n - 1}}, {std::nullopt, {spec.dT, spec.dT + n - 1}}};
}

}  // namespace

PhotonState encoded_closed_form(const QubitSpec &q, const EncoderSpec &spec, const NoiseParams &noise) {
    PhotonState s;
    Tick n = spec.bins();
    double scale = 1 / std::sqrt(static_cast<double>(n));
    for (Tick t = 0; t < n; t++) {
        Complex c = (t % 2 == 0 ? q.alpha : q.beta) * scale;
        s.add(kFiber, Polarization::H, t, c * noise.d1);
        s.add(kFiber, Polarization::V, t, c * noise.g1);
        s.add(kFiber, Polarization::H, spec.dT + t, -kI * c * noise.d2);
        s.add(kFiber, Polarization::V, spec.dT + t, -kI * c * noise.g2);
    }
    return s;
}

PhotonState interferometer_input(const QubitSpec &q) {
    PhotonState s;
    for (Tick t : {0, 2}) {
        s.add(kFiber, Polarization::H, t, q.alpha);
    }
    for (Tick t : {1, 3}) {
        s.add(kFiber, Polarization::H, t, q.beta);
    }
    return s;
}

PhotonState interferometer_front_closed_form(const QubitSpec &q) {
    const double r = std::sqrt(0.5);
    PhotonState s;
    for (Tick t : {0, 2}) {
        s.add(kShortArm, Polarization::V, t, r * q.alpha);
    }
    for (Tick t : {1, 3}) {
        s.add(kShortArm, Polarization::V, t, r * q.beta);
        s.add(kLongArm, Polarization::H, t, r * q.alpha);
    }
    for (Tick t : {2, 4}) {
        s.add(kLongArm, Polarization::H, t, r * q.beta);
    }
    return s;
}

GoldenResult check_encoder_output(const Circuit &encoder, const EncoderSpec &spec, const QubitSpec &q) {
    PhotonState actual = run(encoder, new_state(q, encoder.input));
    return compare(
        "encoder-output", actual, q, [&](const QubitSpec &x) { return encoded_closed_form(x, spec); },
        spec.convention == BsConvention::PaperSurfacePhases, encoder_groups(spec));
}

GoldenResult check_noisy_state(const Circuit &encoder, const EncoderSpec &spec, const QubitSpec &q,
                               const NoiseParams &noise) {
    PhotonState actual = apply_collective_noise(run(encoder, new_state(q, encoder.input)), noise, kFiber);
    return compare(
        "noisy-state", actual, q, [&](const QubitSpec &x) { return encoded_closed_form(x, spec, noise); },
        spec.convention == BsConvention::PaperSurfacePhases, encoder_groups(spec));
}

GoldenResult check_interferometer_front(const Circuit &decoder, const DecoderSpec &spec, const QubitSpec &q) {
    if (decoder.elements.empty()) {
        throw CircuitError("decoder has no elements");
    }
    Circuit front = decoder.prefix(decoder.elements.size() - 1);
    PhotonState actual = run(front, interferometer_input(q));
    std::vector<Group> groups{{std::string(kShortArm), {0, 4}}, {std::string(kLongArm), {0, 4}}};
    return compare("interferometer-front", actual, q, interferometer_front_closed_form,
                   spec.convention == BsConvention::PaperSurfacePhases, groups);
}

}  // namespace serq
