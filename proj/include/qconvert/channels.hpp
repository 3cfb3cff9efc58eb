// Copyright 2026 The qconvert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Separable operations rho -> sum_i (A_i (x) B_i) rho (A_i (x) B_i)^H and the
// small LOCC vocabulary used to build conversion protocols: local unitaries and
// discard-and-prepare of a separable state, mixed with classical weights.

#ifndef QCONVERT_CHANNELS_HPP
#define QCONVERT_CHANNELS_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qconvert/states.hpp"

namespace qconvert {

struct LocalKrausPair {
    CMat2 a;
    CMat2 b;

    CMat4 op() const { return kron2(a, b); }
};

inline constexpr double kCompletenessTolerance = 1e-10;

/// Trace-preserving separable channel. Construction rejects Kraus sets with
/// ||sum E^H E - I||_F > kCompletenessTolerance.
class SeparableChannel {
   public:
    SeparableChannel(std::vector<LocalKrausPair> kraus, bool locc_certified);

    const std::vector<LocalKrausPair> &kraus() const { return kraus_; }
    bool locc_certified() const { return locc_certified_; }
    double completeness_residual() const;

   private:
    std::vector<LocalKrausPair> kraus_;
    bool locc_certified_;
};

double completeness_residual(std::span<const LocalKrausPair> kraus);

/// Throws NotUnitary.
SeparableChannel local_unitary_channel(const CMat2 &ua, const CMat2 &ub);

SeparableChannel identity_channel();

/// rho -> sigma for every input. Throws NotSeparable for an entangled target,
/// NotProductDiagonal when no product decomposition of sigma is found.
SeparableChannel discard_prepare_channel(const DensityMatrix &sigma);

struct WeightedChannel {
    double weight;
    SeparableChannel channel;
};

/// Kraus union scaled by sqrt(weight). Throws BadWeights.
SeparableChannel mix(std::span<const WeightedChannel> parts);

DensityMatrix apply(const SeparableChannel &ch, const DensityMatrix &rho);
CMat4 apply_raw(const SeparableChannel &ch, const CMat4 &rho);

struct LocalUnitary {
    CMat2 ua;
    CMat2 ub;
};

struct DiscardPrepare {
    DensityMatrix target;
};

using ProtocolAtom = std::variant<LocalUnitary, DiscardPrepare>;

struct WeightedAtom {
    double weight;
    ProtocolAtom atom;
};

inline constexpr double kProtocolWeightTolerance = 1e-12;

/// A deterministic mixture of LOCC atoms. Weights are non-negative and sum to
/// one; unitaries are unitary; every prepared target is separable.
class Protocol {
   public:
    explicit Protocol(std::vector<WeightedAtom> atoms);

    static Protocol identity();

    const std::vector<WeightedAtom> &atoms() const { return atoms_; }

   private:
    std::vector<WeightedAtom> atoms_;
};

SeparableChannel atom_channel(const ProtocolAtom &atom);
SeparableChannel compile(const Protocol &p);

/// One branch of a probabilistic operation: with probability `weight` the
/// branch is attempted, succeeds with `success_prob`, and on success leaves
/// the state as `completion` would.
struct ProbabilisticBranch {
    double weight;
    double success_prob;
    ProtocolAtom completion;
};

struct RenormalizedProtocol {
    Protocol protocol;
    double success_probability;
};

/// Conditions the mixture on success: weight_k' = weight_k s_k / sum_j weight_j s_j.
/// Every completion is itself deterministic, so the conditioned mixture is a
/// deterministic protocol with the same output. Throws BadWeights.
RenormalizedProtocol renormalize_probabilistic(std::span<const ProbabilisticBranch> branches);

/// How a catalog channel acts on Bell-diagonal weights (indices in kBellOrder).
struct BellAction {
    enum class Kind { Permutation, Replace };
    Kind kind;
    std::array<int, 4> permutation{};  // weight on k moves to permutation[k]
    std::array<int, 2> pair{};         // Replace: output (P_i + P_j) / 2

    std::array<double, 4> act(const std::array<double, 4> &weights) const;
};

struct CatalogEntry {
    std::string name;
    ProtocolAtom atom;
    SeparableChannel channel;
    BellAction action;
};

/// One-sided Pauli unitaries (with their Bell permutations measured
/// numerically) and the six pair-replacement channels rho -> (P_i + P_j) / 2.
const std::vector<CatalogEntry> &bell_extremal_catalog();

}  // namespace qconvert

#endif
