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

#ifndef SERQ_POSTSELECTION_H
#define SERQ_POSTSELECTION_H

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "serq/builders.h"
#include "serq/circuit.h"
#include "serq/collective_noise.h"

namespace serq {

/// The four noise branches of a transmission, named after the encoded group they come from
/// (port 1 or 2) and the polarization the channel leaves them in. Each carries one of the noise
/// coefficients: P1H d1, P1V g1, P2H d2, P2V g2.
enum class BranchId : std::uint8_t { P1H = 0, P1V = 1, P2H = 2, P2V = 3 };
inline constexpr std::array<BranchId, 4> kAllBranches{BranchId::P1H, BranchId::P1V, BranchId::P2H, BranchId::P2V};
std::string_view branch_name(BranchId b);

/// Pauli correction applied to the (H, V) amplitudes of a detected bin.
enum class Correction : std::uint8_t { Identity, BitFlip, PhaseFlip, BitPhaseFlip };
inline constexpr std::array<Correction, 4> kAllCorrections{Correction::Identity, Correction::BitFlip,
                                                          Correction::PhaseFlip, Correction::BitPhaseFlip};
std::string_view correction_name(Correction c);
/// Returns (h', v') = P (h, v). BitPhaseFlip is sigma_x sigma_z: (h, v) -> (-v, h).
std::array<Complex, 2> apply_correction(Correction c, std::array<Complex, 2> hv);

/// Where a branch lands at the decoder output: its port and the tick of its first bin.
struct BranchLayout {
    BranchId id;
    std::string port;
    Tick offset;
};

/// Per-branch decoding rule. `span` bins (relative ticks 0..span-1) per branch; each bin is
/// either accepted with a correction or discarded.
struct CorrectionTable {
    std::array<BranchLayout, 4> layouts;
    Tick span = 0;
    std::map<std::pair<BranchId, Tick>, Correction> accepted;
    std::map<BranchId, std::vector<Tick>> discarded;

    const BranchLayout &layout(BranchId b) const {
        return layouts[static_cast<size_t>(b)];
    }
    /// Correction for (branch, relative tick), or nullptr when the bin is discarded.
    const Correction *find(BranchId b, Tick rel) const;
};

struct AcceptedBin {
    std::string port;
    Tick tick;
    Correction correction;
    double probability;
    double fidelity;
};

struct DiscardedBin {
    std::string port;
    Tick tick;
    double probability;
};

struct BranchReport {
    BranchId branch;
    std::vector<AcceptedBin> accepted;
    std::vector<DiscardedBin> discarded;
    double success_probability = 0;
    double total_probability = 0;

    bool empty() const {
        return accepted.empty() && discarded.empty();
    }
    double min_fidelity() const;
};

/// The full transmission chain: encoder, collective noise on the fiber, decoder.
class Scheme {
   public:
    Scheme(const EncoderSpec &enc, const DecoderSpec &dec);
    /// Uses the given circuits in place of the built ones. They must agree with the specs on
    /// where groups and ports land.
    Scheme(const EncoderSpec &enc, const DecoderSpec &dec, Circuit encoder, Circuit decoder);

    const EncoderSpec &encoder_spec() const {
        return enc_;
    }
    const DecoderSpec &decoder_spec() const {
        return dec_;
    }
    const Circuit &encoder() const {
        return encoder_;
    }
    const Circuit &decoder() const {
        return decoder_;
    }
    /// Expected success probability (N - 1)/N.
    double ideal_success() const;

    PhotonState encode(const QubitSpec &q) const;
    /// Decoder output for `q` sent through the channel with parameters `noise`.
    PhotonState transmit(const QubitSpec &q, const NoiseParams &noise) const;
    std::array<BranchLayout, 4> layouts() const;

   private:
    EncoderSpec enc_;
    DecoderSpec dec_;
    Circuit encoder_;
    Circuit decoder_;
};

/// Derives the decoding rule by sending the basis states |H> and |V> through the chain.
///
/// For each branch, a noise setting that routes the whole photon into that branch is applied
/// (identity for P1H/P2V, the H<->V swap for P1V/P2H). At every bin of the branch the two
/// responses form a 2x2 map M from (alpha, beta) to the detected (H, V) amplitudes. A bin is
/// accepted with Pauli P when P M is a nonzero multiple of the identity, and discarded when M is
/// singular (the bin only ever sees one of alpha, beta). A full-rank M that no Pauli fixes throws
/// std::logic_error: it means the wiring or phase convention is inconsistent.
CorrectionTable correction_table(const Scheme &scheme);

/// Post-selection accounting of a decoded state. `q` is the transmitted qubit, used only for
/// the fidelity of each corrected bin. Branches without any support give empty reports.
std::vector<BranchReport> analyze(const PhotonState &decoded, const CorrectionTable &table, const QubitSpec &q);

double total_success(const std::vector<BranchReport> &reports);
double min_fidelity(const std::vector<BranchReport> &reports);

struct SweepSample {
    NoiseParams noise;
    QubitSpec qubit;
    double success;
    double min_fidelity;
};

struct SweepStats {
    std::vector<SweepSample> samples;
    double mean_success = 0;
    double max_deviation = 0;
    double min_fidelity = 1;
};

/// Sample i uses noise sample_noise(ensemble, mix_seed(seed, i)) and a random qubit derived
/// from the same seed. Deterministic per seed.
SweepStats success_probability_sweep(const Scheme &scheme, const NoiseEnsemble &ensemble, std::uint64_t samples,
                                     std::uint64_t seed);

/// Haar-random qubit from a seed.
QubitSpec random_qubit(std::uint64_t seed);

/// Branch reports as CSV rows "branch,port,tick,correction,probability,fidelity"; discarded
/// bins carry the correction "discard" and an empty fidelity.
std::string reports_to_csv(const std::vector<BranchReport> &reports, bool header = true);

}  // namespace serq

#endif
