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

#ifndef SERQ_PHOTON_STATE_H
#define SERQ_PHOTON_STATE_H

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace serq {

using Complex = std::complex<double>;

/// Discrete time in units of half the short MZI interval (one tick = dt/2, so dt = 2 ticks).
using Tick = std::int64_t;

/// Amplitudes with magnitude below this are dropped from a PhotonState.
inline constexpr double kPruneThreshold = 1e-15;
/// Default tolerance for amplitude comparisons.
inline constexpr double kAmplitudeTolerance = 1e-12;

enum class Polarization : std::uint8_t { H = 0, V = 1 };

char polarization_char(Polarization p);
Polarization flipped(Polarization p);

/// Addressable basis element: a channel label, a polarization and a time bin.
///
/// Ordered by channel, then tick, then polarization so that dumps of a state are
/// deterministic.
struct Mode {
    std::string channel;
    Polarization pol = Polarization::H;
    Tick t = 0;

    bool operator==(const Mode &other) const = default;
    bool operator<(const Mode &other) const;
};

/// Inclusive tick interval [lo, hi].
struct TickRange {
    Tick lo = 0;
    Tick hi = 0;

    static TickRange single(Tick t) {
        return {t, t};
    }
    bool contains(Tick t) const {
        return lo <= t && t <= hi;
    }
};

/// A single-qubit polarization state alpha|H> + beta|V>.
struct QubitSpec {
    Complex alpha{1, 0};
    Complex beta{0, 0};

    double norm_sq() const {
        return std::norm(alpha) + std::norm(beta);
    }
    bool is_normalized(double tol = kAmplitudeTolerance) const;
    bool operator==(const QubitSpec &other) const = default;
};

/// Single-photon wavefunction: a sparse map from Mode to complex amplitude.
///
/// Entries smaller than kPruneThreshold are never stored. Arithmetic is linear,
/// so states may be added and scaled freely; nothing forces normalization.
class PhotonState {
   public:
    using Map = std::map<Mode, Complex>;
    using const_iterator = Map::const_iterator;

    PhotonState() = default;

    /// Accumulates `amp` onto `mode`, pruning the entry if it cancels out.
    void add(const Mode &mode, Complex amp);
    void add(std::string_view channel, Polarization pol, Tick t, Complex amp);
    Complex amplitude(const Mode &mode) const;
    Complex amplitude(std::string_view channel, Polarization pol, Tick t) const;

    double norm_sq() const;
    size_t size() const {
        return amps_.size();
    }
    bool empty() const {
        return amps_.empty();
    }
    const_iterator begin() const {
        return amps_.begin();
    }
    const_iterator end() const {
        return amps_.end();
    }
    const Map &amplitudes() const {
        return amps_;
    }

    /// Sub-state of modes on `channel` whose tick lies in `window`.
    PhotonState restrict(std::string_view channel, TickRange window) const;
    /// Sub-state of modes whose tick lies in `window`, any channel.
    PhotonState restrict_ticks(TickRange window) const;
    /// Smallest and largest tick in the support. Undefined on empty states.
    TickRange tick_span() const;

    /// Largest |a - b| over the union of both supports.
    double max_deviation(const PhotonState &other) const;

    /// One line per mode, "channel,pol,tick,re,im", floats printed round-trip exact.
    std::string dump() const;

    PhotonState &operator+=(const PhotonState &other);
    PhotonState &operator*=(Complex scale);
    friend PhotonState operator+(PhotonState a, const PhotonState &b) {
        a += b;
        return a;
    }
    friend PhotonState operator*(Complex scale, PhotonState s) {
        s *= scale;
        return s;
    }

   private:
    Map amps_;
};

/// The photon entering the scheme: alpha on (channel, H, 0) and beta on (channel, V, 0).
/// Throws std::invalid_argument when |alpha|^2 + |beta|^2 differs from 1 by more than 1e-12.
PhotonState new_state(const QubitSpec &q, std::string_view channel);

double norm_sq(const PhotonState &s);
PhotonState restrict(const PhotonState &s, std::string_view channel, TickRange window);

/// |<q|s>|^2 with s renormalized. `s` must live on a single (channel, tick).
/// Throws std::invalid_argument on a zero-norm state or a state spread over several bins.
double fidelity_with_qubit(const PhotonState &s, const QubitSpec &q);

/// Printf-style "%.17g" formatting used by every text output in the project.
std::string format_double(double v);

}  // namespace serq

#endif
