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

#include "serq/qkd.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "serq/postselection.h"

namespace serq {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

QubitSpec bb84_state(bool diagonal, bool bit) {
    if (!diagonal) {
        return bit ? QubitSpec{{0, 0}, {1, 0}} : QubitSpec{{1, 0}, {0, 0}};
    }
    return {{kInvSqrt2, 0}, {bit ? -kInvSqrt2 : kInvSqrt2, 0}};
}

/// Probability that a measurement of (h, v) in the chosen basis yields bit 1.
double prob_one(bool diagonal, std::array<Complex, 2> hv) {
    double n = std::norm(hv[0]) + std::norm(hv[1]);
    if (!diagonal) {
        return std::norm(hv[1]) / n;
    }
    return std::norm(hv[0] - hv[1]) / (2 * n);
}

}  // namespace

void Bb84Config::validate() const {
    if (pulses == 0) {
        throw std::invalid_argument("pulses must be positive");
    }
    if (refresh_period == 0) {
        throw std::invalid_argument("refresh period must be positive");
    }
    if (!(eta > 0 && eta <= 1)) {
        throw std::invalid_argument("eta must be in (0, 1], got " + format_double(eta));
    }
    if (stages < 1 || stages > 20) {
        throw std::invalid_argument("stages must be in [1, 20], got " + std::to_string(stages));
    }
    if (dT < 0 || dTprime < 0) {
        throw std::invalid_argument("dT and dTprime must be non-negative");
    }
}

std::string Bb84Stats::csv_header() {
    return "pulses,sifted,errors,qber,detection_rate";
}

std::string Bb84Stats::csv_row() const {
    return std::to_string(sent) + "," + std::to_string(sifted) + "," + std::to_string(errors) + "," +
           format_double(qber) + "," + format_double(detection_rate);
}

std::string Bb84Stats::summary() const {
    return "sent " + std::to_string(sent) + ", detected " + std::to_string(detected) + " (rate " +
           format_double(detection_rate) + "), rejected " + std::to_string(rejected) + ", sifted " +
           std::to_string(sifted) + ", errors " + std::to_string(errors) + ", qber " + format_double(qber);
}

double effective_efficiency(int stages, double eta) {
    if (stages < 1 || stages > 62) {
        throw std::invalid_argument("stages must be >= 1");
    }
    if (!(eta > 0 && eta <= 1)) {
        throw std::invalid_argument("eta must be in (0, 1]");
    }
    double n = std::ldexp(1.0, stages + 1);
    return eta * (n - 1) / n;
}

Bb84Stats simulate_bb84(const Bb84Config &cfg) {
    cfg.validate();
    EncoderSpec enc = EncoderSpec::for_stages(cfg.stages, cfg.convention);
    if (cfg.dT != 0) {
        enc.dT = cfg.dT;
    }
    Scheme scheme(enc, DecoderSpec{cfg.dTprime, cfg.convention});
    CorrectionTable table = correction_table(scheme);

    Bb84Stats stats;
    stats.sent = cfg.pulses;
    NoiseParams noise;
    for (std::uint64_t i = 0; i < cfg.pulses; i++) {
        if (i % cfg.refresh_period == 0) {
            noise = sample_noise(cfg.ensemble, mix_seed(~cfg.seed, i / cfg.refresh_period));
        }
        std::mt19937_64 rng(mix_seed(cfg.seed, i));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        bool alice_diagonal = rng() & 1;
        bool alice_bit = rng() & 1;
        bool bob_diagonal = rng() & 1;
        QubitSpec q = bb84_state(alice_diagonal, alice_bit);

        PhotonState out = scheme.transmit(q, noise);
        auto reports = analyze(out, table, q);

        // Walk the bins of every branch; the photon clicks in at most one of them.
        double u = unit(rng);
        double acc = 0;
        const AcceptedBin *hit = nullptr;
        bool rejected = false;
        for (const auto &r : reports) {
            for (const auto &bin : r.accepted) {
                acc += cfg.eta * bin.probability;
                if (hit == nullptr && !rejected && u < acc) {
                    hit = &bin;
                }
            }
            for (const auto &bin : r.discarded) {
                acc += cfg.eta * bin.probability;
                if (hit == nullptr && !rejected && u < acc) {
                    rejected = true;
                }
            }
        }
        if (rejected) {
            stats.rejected++;
            continue;
        }
        if (hit == nullptr) {
            continue;
        }
        stats.detected++;
        double measure = unit(rng);
        if (bob_diagonal != alice_diagonal) {
            continue;
        }
        stats.sifted++;
        auto hv = apply_correction(hit->correction, {out.amplitude(hit->port, Polarization::H, hit->tick),
                                                     out.amplitude(hit->port, Polarization::V, hit->tick)});
        bool bob_bit = measure < prob_one(bob_diagonal, hv);
        if (bob_bit != alice_bit) {
            stats.errors++;
        }
    }
    stats.qber = stats.sifted == 0 ? 0.0 : static_cast<double>(stats.errors) / static_cast<double>(stats.sifted);
    stats.detection_rate = static_cast<double>(stats.detected) / static_cast<double>(stats.sent);
    return stats;
}

}  // namespace serq
