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

#include "serq/postselection.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace serq {

namespace {

constexpr double kPauliTolerance = 1e-9;

/// (h, v) amplitudes at one (port, tick).
std::array<Complex, 2> bin_amplitudes(const PhotonState &s, const std::string &port, Tick t) {
    return {s.amplitude(port, Polarization::H, t), s.amplitude(port, Polarization::V, t)};
}

/// Noise that sends the whole photon into `b`.
NoiseParams routing_noise(BranchId b) {
    if (b == BranchId::P1V || b == BranchId::P2H) {
        return {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    }
    return NoiseParams::identity();
}

/// Pauli P with P M proportional to the identity, if any. `col0`/`col1` are the columns of M.
const Correction *solve_pauli(const std::array<Complex, 2> &col0, const std::array<Complex, 2> &col1) {
    for (const Correction &c : kAllCorrections) {
        auto a0 = apply_correction(c, col0);
        auto a1 = apply_correction(c, col1);
        double scale = std::max(std::abs(a0[0]), std::abs(a1[1]));
        if (scale == 0) {
            continue;
        }
        if (std::abs(a0[1]) <= kPauliTolerance * scale && std::abs(a1[0]) <= kPauliTolerance * scale &&
            std::abs(a0[0] - a1[1]) <= kPauliTolerance * scale) {
            return &c;
        }
    }
    return nullptr;
}

}  // namespace

std::string_view branch_name(BranchId b) {
    switch (b) {
        case BranchId::P1H:
            return "P1H";
        case BranchId::P1V:
            return "P1V";
        case BranchId::P2H:
            return "P2H";
        case BranchId::P2V:
            return "P2V";
    }
    return "?";
}

std::string_view correction_name(Correction c) {
    switch (c) {
        case Correction::Identity:
            return "I";
        case Correction::BitFlip:
            return "X";
        case Correction::PhaseFlip:
            return "Z";
        case Correction::BitPhaseFlip:
            return "XZ";
    }
    return "?";
}

std::array<Complex, 2> apply_correction(Correction c, std::array<Complex, 2> hv) {
    switch (c) {
        case Correction::Identity:
            return hv;
        case Correction::BitFlip:
            return {hv[1], hv[0]};
        case Correction::PhaseFlip:
            return {hv[0], -hv[1]};
        case Correction::BitPhaseFlip:
            return {-hv[1], hv[0]};
    }
    return hv;
}

const Correction *CorrectionTable::find(BranchId b, Tick rel) const {
    auto it = accepted.find({b, rel});
    return it == accepted.end() ? nullptr : &it->second;
}

double BranchReport::min_fidelity() const {
    double f = 1;
    for (const auto &bin : accepted) {
        f = std::min(f, bin.fidelity);
    }
    return f;
}

Scheme::Scheme(const EncoderSpec &enc, const DecoderSpec &dec)
    : Scheme(enc, dec, build_encoder(enc), build_decoder(dec)) {
}

Scheme::Scheme(const EncoderSpec &enc, const DecoderSpec &dec, Circuit encoder, Circuit decoder)
    : enc_(enc), dec_(dec), encoder_(std::move(encoder)), decoder_(std::move(decoder)) {
    check_compatible(enc_, dec_);
    encoder_.validate();
    decoder_.validate();
    if (std::find(encoder_.outputs.begin(), encoder_.outputs.end(), decoder_.input) == encoder_.outputs.end()) {
        throw std::invalid_argument("decoder input '" + decoder_.input + "' is not an encoder output");
    }
}

double Scheme::ideal_success() const {
    double n = static_cast<double>(enc_.bins());
    return (n - 1) / n;
}

PhotonState Scheme::encode(const QubitSpec &q) const {
    return run(encoder_, new_state(q, encoder_.input));
}

PhotonState Scheme::transmit(const QubitSpec &q, const NoiseParams &noise) const {
    PhotonState encoded = encode(q);
    PhotonState in_fiber = encoded.restrict(decoder_.input, {std::numeric_limits<Tick>::min(), std::numeric_limits<Tick>::max()});
    if (std::abs(in_fiber.norm_sq() - encoded.norm_sq()) > kAmplitudeTolerance) {
        throw std::logic_error("encoder leaves amplitude outside the fiber channel '" + decoder_.input + "'");
    }
    return run(decoder_, apply_collective_noise(in_fiber, noise, decoder_.input));
}

std::array<BranchLayout, 4> Scheme::layouts() const {
    const std::string p5(kPort5), p6(kPort6);
    return {{
        {BranchId::P1H, p5, 0},
        {BranchId::P1V, p6, dec_.dTprime},
        {BranchId::P2H, p5, enc_.dT},
        {BranchId::P2V, p6, enc_.dT + dec_.dTprime},
    }};
}

CorrectionTable correction_table(const Scheme &scheme) {
    CorrectionTable table;
    table.layouts = scheme.layouts();
    // The output interferometer adds one tick to the N encoded bins.
    table.span = scheme.encoder_spec().bins() + 1;
    for (BranchId b : kAllBranches) {
        NoiseParams noise = routing_noise(b);
        PhotonState from_h = scheme.transmit({{1, 0}, {0, 0}}, noise);
        PhotonState from_v = scheme.transmit({{0, 0}, {1, 0}}, noise);
        const BranchLayout &lay = table.layout(b);
        for (Tick rel = 0; rel < table.span; rel++) {
            auto col0 = bin_amplitudes(from_h, lay.port, lay.offset + rel);
            auto col1 = bin_amplitudes(from_v, lay.port, lay.offset + rel);
            double n0 = std::sqrt(std::norm(col0[0]) + std::norm(col0[1]));
            double n1 = std::sqrt(std::norm(col1[0]) + std::norm(col1[1]));
            if (n0 == 0 && n1 == 0) {
                continue;
            }
            Complex det = col0[0] * col1[1] - col1[0] * col0[1];
            if (std::abs(det) <= kPauliTolerance * n0 * n1) {
                table.discarded[b].push_back(rel);
                continue;
            }
            const Correction *c = solve_pauli(col0, col1);
            if (c == nullptr) {
                throw std::logic_error("no Pauli correction reconstructs branch " + std::string(branch_name(b)) +
                                       " at relative tick " + std::to_string(rel) +
                                       "; the circuit's phase convention is inconsistent");
            }
            table.accepted[{b, rel}] = *c;
        }
    }
    return table;
}

std::vector<BranchReport> analyze(const PhotonState &decoded, const CorrectionTable &table, const QubitSpec &q) {
    std::vector<BranchReport> reports;
    for (BranchId b : kAllBranches) {
        const BranchLayout &lay = table.layout(b);
        BranchReport report;
        report.branch = b;
        PhotonState window = decoded.restrict(lay.port, {lay.offset, lay.offset + table.span - 1});
        if (window.empty()) {
            reports.push_back(std::move(report));
            continue;
        }
        report.total_probability = window.norm_sq();
        for (Tick rel = 0; rel < table.span; rel++) {
            Tick t = lay.offset + rel;
            auto hv = bin_amplitudes(decoded, lay.port, t);
            double p = std::norm(hv[0]) + std::norm(hv[1]);
            if (const Correction *c = table.find(b, rel)) {
                double fidelity = 0;
                if (p > 0) {
                    auto fixed = apply_correction(*c, hv);
                    Complex overlap = std::conj(q.alpha) * fixed[0] + std::conj(q.beta) * fixed[1];
                    fidelity = std::min(1.0, std::norm(overlap) / (p * q.norm_sq()));
                }
                report.accepted.push_back({lay.port, t, *c, p, fidelity});
                report.success_probability += p;
            } else if (auto it = table.discarded.find(b);
                       it != table.discarded.end() && std::find(it->second.begin(), it->second.end(), rel) != it->second.end()) {
                report.discarded.push_back({lay.port, t, p});
            }
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

double total_success(const std::vector<BranchReport> &reports) {
    double total = 0;
    for (const auto &r : reports) {
        total += r.success_probability;
    }
    return total;
}

double min_fidelity(const std::vector<BranchReport> &reports) {
    double f = 1;
    for (const auto &r : reports) {
        f = std::min(f, r.min_fidelity());
    }
    return f;
}

QubitSpec random_qubit(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (true) {
        Complex a{gauss(rng), gauss(rng)};
        Complex b{gauss(rng), gauss(rng)};
        double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n > 1e-6) {
            return {a / n, b / n};
        }
    }
}

SweepStats success_probability_sweep(const Scheme &scheme, const NoiseEnsemble &ensemble, std::uint64_t samples,
                                     std::uint64_t seed) {
    if (samples == 0) {
        throw std::invalid_argument("sweep needs at least one sample");
    }
    CorrectionTable table = correction_table(scheme);
    double ideal = scheme.ideal_success();
    SweepStats stats;
    stats.samples.reserve(samples);
    double sum = 0;
    for (std::uint64_t i = 0; i < samples; i++) {
        NoiseParams noise = sample_noise(ensemble, mix_seed(seed, 2 * i));
        QubitSpec q = random_qubit(mix_seed(seed, 2 * i + 1));
        auto reports = analyze(scheme.transmit(q, noise), table, q);
        SweepSample sample{noise, q, total_success(reports), min_fidelity(reports)};
        sum += sample.success;
        stats.max_deviation = std::max(stats.max_deviation, std::abs(sample.success - ideal));
        stats.min_fidelity = std::min(stats.min_fidelity, sample.min_fidelity);
        stats.samples.push_back(sample);
    }
    stats.mean_success = sum / static_cast<double>(samples);
    return stats;
}

std::string reports_to_csv(const std::vector<BranchReport> &reports, bool header) {
    std::string out = header ? "branch,port,tick,correction,probability,fidelity\n" : "";
    for (const auto &r : reports) {
        std::string name(branch_name(r.branch));
        for (const auto &bin : r.accepted) {
            out += name + "," + bin.port + "," + std::to_string(bin.tick) + "," +
                   std::string(correction_name(bin.correction)) + "," + format_double(bin.probability) + "," +
                   format_double(bin.fidelity) + "\n";
        }
        for (const auto &bin : r.discarded) {
            out += name + "," + bin.port + "," + std::to_string(bin.tick) + ",discard," +
                   format_double(bin.probability) + ",\n";
        }
    }
    return out;
}

}  // namespace serq
