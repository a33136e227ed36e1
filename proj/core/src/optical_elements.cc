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

#include "serq/optical_elements.h"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace serq {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;
constexpr Complex kI{0, 1};

/// Applies `fn(mode, amp, out)` to every mode on `in`; other modes are copied through.
template <typename Fn>
PhotonState map_channel(const PhotonState &s, std::string_view in, Fn &&fn) {
    PhotonState out;
    for (const auto &[mode, amp] : s) {
        if (mode.channel == in) {
            fn(mode, amp, out);
        } else {
            out.add(mode, amp);
        }
    }
    return out;
}

}  // namespace

std::string_view convention_name(BsConvention c) {
    return c == BsConvention::Symmetric ? "symmetric" : "paper";
}

BsConvention parse_convention(std::string_view text) {
    if (text == "symmetric") {
        return BsConvention::Symmetric;
    }
    if (text == "paper") {
        return BsConvention::PaperSurfacePhases;
    }
    throw std::invalid_argument("unknown beam splitter convention '" + std::string(text) +
                                "' (expected symmetric or paper)");
}

BsMatrix bs_matrix(BsConvention c) {
    Complex r2 = c == BsConvention::Symmetric ? kI : -kI;
    return {{{kInvSqrt2, kI * kInvSqrt2}, {r2 * kInvSqrt2, kInvSqrt2}}};
}

PhotonState apply_pbs(const PhotonState &s, std::string_view in1, std::string_view in2, std::string_view out1,
                      std::string_view out2) {
    PhotonState out;
    for (const auto &[mode, amp] : s) {
        bool first = mode.channel == in1;
        if (!first && mode.channel != in2) {
            out.add(mode, amp);
            continue;
        }
        bool transmit = mode.pol == Polarization::H;
        std::string_view dest = (first == transmit) ? out1 : out2;
        out.add(dest, mode.pol, mode.t, amp);
    }
    return out;
}

PhotonState apply_bs(const PhotonState &s, std::string_view in1, std::string_view in2, std::string_view out1,
                     std::string_view out2, BsConvention convention) {
    BsMatrix bm = bs_matrix(convention);
    PhotonState out;
    std::map<std::pair<Polarization, Tick>, int> occupied;
    for (const auto &[mode, amp] : s) {
        int col;
        if (mode.channel == in1) {
            col = 0;
        } else if (mode.channel == in2) {
            col = 1;
        } else {
            out.add(mode, amp);
            continue;
        }
        if (convention == BsConvention::PaperSurfacePhases) {
            int &mask = occupied[{mode.pol, mode.t}];
            mask |= 1 << col;
            if (mask == 3) {
                throw ConventionViolation(
                    "paper beam splitter convention cannot interfere inputs '" + std::string(in1) + "' and '" +
                    std::string(in2) + "' at pol " + polarization_char(mode.pol) + " tick " +
                    std::to_string(mode.t));
            }
        }
        out.add(out1, mode.pol, mode.t, bm.m[0][col] * amp);
        out.add(out2, mode.pol, mode.t, bm.m[1][col] * amp);
    }
    return out;
}

PhotonState apply_hwp(const PhotonState &s, std::string_view in, std::string_view out) {
    return map_channel(s, in, [&](const Mode &m, Complex a, PhotonState &dst) {
        dst.add(out, flipped(m.pol), m.t, a);
    });
}

PhotonState apply_hwp(const PhotonState &s, std::string_view channel) {
    return apply_hwp(s, channel, channel);
}

PhotonState apply_phase(const PhotonState &s, std::string_view in, std::string_view out, double phi) {
    Complex factor = std::polar(1.0, phi);
    return map_channel(s, in, [&](const Mode &m, Complex a, PhotonState &dst) {
        dst.add(out, m.pol, m.t, a * factor);
    });
}

PhotonState apply_phase(const PhotonState &s, std::string_view channel, double phi) {
    return apply_phase(s, channel, channel, phi);
}

PhotonState apply_delay(const PhotonState &s, std::string_view in, std::string_view out, Tick ticks) {
    if (ticks < 0) {
        throw std::invalid_argument("delay must be non-negative, got " + std::to_string(ticks));
    }
    return map_channel(s, in, [&](const Mode &m, Complex a, PhotonState &dst) {
        dst.add(out, m.pol, m.t + ticks, a);
    });
}

PhotonState apply_delay(const PhotonState &s, std::string_view channel, Tick ticks) {
    return apply_delay(s, channel, channel, ticks);
}

PhotonState apply_timebin_splitter(const PhotonState &s, std::string_view in, std::string_view out, Tick ticks) {
    if (ticks < 1) {
        throw std::invalid_argument("time-bin splitter interval must be >= 1, got " + std::to_string(ticks));
    }
    return map_channel(s, in, [&](const Mode &m, Complex a, PhotonState &dst) {
        dst.add(out, m.pol, m.t, a * kInvSqrt2);
        dst.add(out, m.pol, m.t + ticks, a * kInvSqrt2);
    });
}

PhotonState apply_timebin_splitter(const PhotonState &s, std::string_view channel, Tick ticks) {
    return apply_timebin_splitter(s, channel, channel, ticks);
}

PhotonState relabel(const PhotonState &s, std::string_view from, std::string_view to) {
    return map_channel(s, from, [&](const Mode &m, Complex a, PhotonState &dst) {
        dst.add(to, m.pol, m.t, a);
    });
}

}  // namespace serq
