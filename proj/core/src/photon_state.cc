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

#include "serq/photon_state.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace serq {

char polarization_char(Polarization p) {
    return p == Polarization::H ? 'H' : 'V';
}

Polarization flipped(Polarization p) {
    return p == Polarization::H ? Polarization::V : Polarization::H;
}

bool Mode::operator<(const Mode &other) const {
    if (int c = channel.compare(other.channel); c != 0) {
        return c < 0;
    }
    if (t != other.t) {
        return t < other.t;
    }
    return pol < other.pol;
}

bool QubitSpec::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

void PhotonState::add(const Mode &mode, Complex amp) {
    auto it = amps_.find(mode);
    if (it == amps_.end()) {
        if (std::abs(amp) >= kPruneThreshold) {
            amps_.emplace(mode, amp);
        }
        return;
    }
    it->second += amp;
    if (std::abs(it->second) < kPruneThreshold) {
        amps_.erase(it);
    }
}

void PhotonState::add(std::string_view channel, Polarization pol, Tick t, Complex amp) {
    add(Mode{std::string(channel), pol, t}, amp);
}

Complex PhotonState::amplitude(const Mode &mode) const {
    auto it = amps_.find(mode);
    return it == amps_.end() ? Complex{} : it->second;
}

Complex PhotonState::amplitude(std::string_view channel, Polarization pol, Tick t) const {
    return amplitude(Mode{std::string(channel), pol, t});
}

double PhotonState::norm_sq() const {
    double total = 0;
    for (const auto &[mode, amp] : amps_) {
        total += std::norm(amp);
    }
    return total;
}

PhotonState PhotonState::restrict(std::string_view channel, TickRange window) const {
    PhotonState out;
    // Modes are ordered by channel first, so the channel's entries are contiguous.
    auto it = amps_.lower_bound(Mode{std::string(channel), Polarization::H, window.lo});
    for (; it != amps_.end() && it->first.channel == channel && it->first.t <= window.hi; ++it) {
        out.amps_.insert(*it);
    }
    return out;
}

PhotonState PhotonState::restrict_ticks(TickRange window) const {
    PhotonState out;
    for (const auto &entry : amps_) {
        if (window.contains(entry.first.t)) {
            out.amps_.insert(entry);
        }
    }
    return out;
}

TickRange PhotonState::tick_span() const {
    TickRange r{std::numeric_limits<Tick>::max(), std::numeric_limits<Tick>::min()};
    for (const auto &[mode, amp] : amps_) {
        r.lo = std::min(r.lo, mode.t);
        r.hi = std::max(r.hi, mode.t);
    }
    return r;
}

double PhotonState::max_deviation(const PhotonState &other) const {
    double worst = 0;
    for (const auto &[mode, amp] : amps_) {
        worst = std::max(worst, std::abs(amp - other.amplitude(mode)));
    }
    for (const auto &[mode, amp] : other.amps_) {
        worst = std::max(worst, std::abs(amp - amplitude(mode)));
    }
    return worst;
}

std::string PhotonState::dump() const {
    std::string out;
    for (const auto &[mode, amp] : amps_) {
        out += mode.channel;
        out += ',';
        out += polarization_char(mode.pol);
        out += ',';
        out += std::to_string(mode.t);
        out += ',';
        out += format_double(amp.real());
        out += ',';
        out += format_double(amp.imag());
        out += '\n';
    }
    return out;
}

PhotonState &PhotonState::operator+=(const PhotonState &other) {
    for (const auto &[mode, amp] : other.amps_) {
        add(mode, amp);
    }
    return *this;
}

PhotonState &PhotonState::operator*=(Complex scale) {
    for (auto it = amps_.begin(); it != amps_.end();) {
        it->second *= scale;
        if (std::abs(it->second) < kPruneThreshold) {
            it = amps_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

PhotonState new_state(const QubitSpec &q, std::string_view channel) {
    if (!q.is_normalized()) {
        throw std::invalid_argument(
            "qubit is not normalized: |alpha|^2 + |beta|^2 = " + format_double(q.norm_sq()));
    }
    PhotonState s;
    s.add(channel, Polarization::H, 0, q.alpha);
    s.add(channel, Polarization::V, 0, q.beta);
    return s;
}

double norm_sq(const PhotonState &s) {
    return s.norm_sq();
}

PhotonState restrict(const PhotonState &s, std::string_view channel, TickRange window) {
    return s.restrict(channel, window);
}

double fidelity_with_qubit(const PhotonState &s, const QubitSpec &q) {
    double n = s.norm_sq();
    if (n <= 0) {
        throw std::invalid_argument("fidelity of a zero-norm state is undefined");
    }
    const Mode &first = s.begin()->first;
    Complex h{}, v{};
    for (const auto &[mode, amp] : s) {
        if (mode.channel != first.channel || mode.t != first.t) {
            throw std::invalid_argument(
                "fidelity needs a state on a single channel and tick; found " + first.channel + "@" +
                std::to_string(first.t) + " and " + mode.channel + "@" + std::to_string(mode.t));
        }
        (mode.pol == Polarization::H ? h : v) = amp;
    }
    Complex overlap = std::conj(q.alpha) * h + std::conj(q.beta) * v;
    double f = std::norm(overlap) / (n * q.norm_sq());
    return std::clamp(f, 0.0, 1.0);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace serq
