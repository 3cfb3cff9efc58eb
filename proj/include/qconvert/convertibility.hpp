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

#ifndef QCONVERT_CONVERTIBILITY_HPP
#define QCONVERT_CONVERTIBILITY_HPP

#include <optional>
#include <string>

#include "qconvert/channels.hpp"
#include "qconvert/measures.hpp"

namespace qconvert {

enum class VerdictKind { Convertible, Forbidden, Inconclusive };

const char *verdict_name(VerdictKind k);

struct Reason {
    enum class Kind {
        RankGate,          // entangled target of strictly lower rank
        MonotoneE,         // a Bell-diagonal monotone would increase
        EofDecrease,       // rank-2 MEMS target is more entangled
        WeightInfeasible,  // Werner target has a larger singlet weight
        SeparableSource,   // entanglement cannot be created by separable maps
    };
    Kind kind;
    int monotone = 0;  // 1..3 for MonotoneE

    std::string name() const;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<Protocol> protocol;
    std::optional<Reason> reason;
    std::string certificate;
    /// ||apply(protocol, from) - to||_F, present whenever a protocol is.
    std::optional<double> residual;
};

inline constexpr double kVerdictResidualTolerance = 1e-8;

/// Forbidden(RankGate) when both states are entangled and the target has
/// strictly lower numeric rank; nullopt (pass) otherwise.
std::optional<Verdict> rank_gate(const DensityMatrix &from, const DensityMatrix &to,
                                 double rank_tol = kDefaultRankTolerance);

Verdict decide_werner(const WernerParam &from, const WernerParam &to);

/// Throws NotEntangled unless both states pass the PPT entanglement test.
Verdict decide_bell(const BellWeights &from, const BellWeights &to);

/// Identity weight W plus a normalized prepared state
///   p01 |01><01| + (p00_11 / 2)(|00><00| + |11><11|) + p10 |10><10|.
struct MemsProtocolParams {
    double W;
    double p01;
    double p00_11;
    double p10;

    DensityMatrix prepared_state() const;
    Protocol protocol() const;
};

/// Solves W (l1 - l3) = l1' - l3' and the three weight equations for the
/// prepared state. Throws Infeasible naming the violated bound, InvalidArgument
/// when the source has no singlet component.
MemsProtocolParams synthesize_mems_protocol(const MemsWeights &from, const MemsWeights &to);

Verdict decide_mems(const MemsWeights &from, const MemsWeights &to);

struct DecideOptions {
    double rank_tol = kDefaultRankTolerance;
    double family_tol = kDefaultFamilyTolerance;
};

/// Separable target, separable source, rank gate, then the rule of the most
/// specific family shared by both states. Anything else is Inconclusive.
Verdict decide(const DensityMatrix &from, const DensityMatrix &to, const DecideOptions &opts = {});

double verify_protocol(const Protocol &p, const DensityMatrix &from, const DensityMatrix &to);

}  // namespace qconvert

#endif
