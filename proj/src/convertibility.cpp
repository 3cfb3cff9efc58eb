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

#include "qconvert/convertibility.hpp"

#include <algorithm>
#include <sstream>

namespace qconvert {

const char *verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Convertible: return "Convertible";
        case VerdictKind::Forbidden: return "Forbidden";
        case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string Reason::name() const {
    switch (kind) {
        case Kind::RankGate: return "RankGate";
        case Kind::MonotoneE: return "MonotoneE(" + std::to_string(monotone) + ")";
        case Kind::EofDecrease: return "EofDecrease";
        case Kind::WeightInfeasible: return "WeightInfeasible";
        case Kind::SeparableSource: return "SeparableSource";
    }
    return "?";
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::string fmt(const MonotoneTriple &t) {
    return "(" + fmt(t.e1) + ", " + fmt(t.e2) + ", " + fmt(t.e3) + ")";
}

Verdict forbidden(Reason reason, std::string certificate) {
    Verdict v;
    v.kind = VerdictKind::Forbidden;
    v.reason = reason;
    v.certificate = std::move(certificate);
    return v;
}

Verdict inconclusive(std::string certificate) {
    Verdict v;
    v.kind = VerdictKind::Inconclusive;
    v.certificate = std::move(certificate);
    return v;
}

// Convertible verdict whose protocol has been checked on the actual states.
Verdict verified(Protocol p, const DensityMatrix &from, const DensityMatrix &to, std::string certificate) {
    Verdict v;
    v.kind = VerdictKind::Convertible;
    v.residual = verify_protocol(p, from, to);
    if (*v.residual > kVerdictResidualTolerance)
        throw Error(ErrorCode::Internal,
                    "synthesized protocol misses its target (residual " + fmt(*v.residual) + ")");
    v.protocol = std::move(p);
    v.certificate = std::move(certificate);
    return v;
}

Protocol mixture_with_prepare(double identity_weight, const DensityMatrix &prepared) {
    return Protocol({{identity_weight, LocalUnitary{CMat2::identity(), CMat2::identity()}},
                     {1.0 - identity_weight, DiscardPrepare{prepared}}});
}

}  // namespace

std::optional<Verdict> rank_gate(const DensityMatrix &from, const DensityMatrix &to, double rank_tol) {
    if (!is_entangled(from) || !is_entangled(to)) return std::nullopt;
    const int r_from = numeric_rank(from.eigenvalues(), rank_tol);
    const int r_to = numeric_rank(to.eigenvalues(), rank_tol);
    if (r_to >= r_from) return std::nullopt;
    return forbidden({Reason::Kind::RankGate},
                     "entangled target has rank " + std::to_string(r_to) + " < source rank " +
                         std::to_string(r_from));
}

Verdict decide_werner(const WernerParam &from, const WernerParam &to) {
    const double w = from.w(), w2 = to.w();
    if (w2 > w)
        return forbidden({Reason::Kind::WeightInfeasible},
                         "target singlet weight " + fmt(w2) + " exceeds source weight " + fmt(w));
    const double p = w == 0.0 ? 1.0 : w2 / w;
    const DensityMatrix mixed(CMat4::identity() * 0.25);
    return verified(mixture_with_prepare(p, mixed), make_werner(from), make_werner(to),
                    "identity with weight " + fmt(p) + ", otherwise prepare I/4");
}

Verdict decide_bell(const BellWeights &from, const BellWeights &to) {
    const DensityMatrix rho = make_bell_diagonal(from);
    const DensityMatrix rho2 = make_bell_diagonal(to);
    if (!is_entangled(rho) || !is_entangled(rho2))
        throw Error(ErrorCode::NotEntangled, "Bell-diagonal rule needs two entangled states");

    const MonotoneTriple e = bell_monotones(from);
    const MonotoneTriple e2 = bell_monotones(to);
    const int k = first_violated_monotone(e, e2);
    if (k >= 0)
        return forbidden({Reason::Kind::MonotoneE, k + 1},
                         "E" + std::to_string(k + 1) + " would increase: " + fmt(e) + " -> " + fmt(e2));

    const std::string cert = "monotones dominate: " + fmt(e) + " >= " + fmt(e2);
    if (from.lambda() == to.lambda()) return verified(Protocol::identity(), rho, rho2, cert);
    Verdict v;
    v.kind = VerdictKind::Convertible;
    v.certificate = cert;
    return v;
}

DensityMatrix MemsProtocolParams::prepared_state() const {
    return DensityMatrix(basis_projector(0, 1) * p01 +
                         (basis_projector(0, 0) + basis_projector(1, 1)) * (p00_11 / 2.0) +
                         basis_projector(1, 0) * p10);
}

Protocol MemsProtocolParams::protocol() const { return mixture_with_prepare(W, prepared_state()); }

MemsProtocolParams synthesize_mems_protocol(const MemsWeights &from, const MemsWeights &to) {
    constexpr double slack = 1e-10;
    const double s = from.singlet_weight();
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "source MEMS has no singlet component");

    const double W = to.singlet_weight() / s;
    if (W > 1.0 + slack)
        throw Error(ErrorCode::Infeasible, "identity weight W = " + fmt(W) + " exceeds 1");
    if (W < -slack) throw Error(ErrorCode::Infeasible, "identity weight W = " + fmt(W) + " is negative");

    if (1.0 - W <= 1e-12) {
        for (std::size_t i = 0; i < 4; ++i)
            if (std::abs(from[i] - to[i]) > slack)
                throw Error(ErrorCode::Infeasible, "W = 1 but the weights differ");
        return {1.0, 1.0, 0.0, 0.0};
    }

    const double rest = 1.0 - W;
    std::array<double, 3> p = {(to[1] - W * from[1]) / rest, 2.0 * (to[2] - W * from[2]) / rest,
                               (to[3] - W * from[3]) / rest};
    static constexpr const char *names[3] = {"p01", "p00_11", "p10"};
    for (std::size_t i = 0; i < 3; ++i) {
        if (p[i] < -slack || p[i] > 1.0 + slack)
            throw Error(ErrorCode::Infeasible,
                        std::string("prepared weight ") + names[i] + " = " + fmt(p[i]) + " outside [0, 1]");
        p[i] = std::clamp(p[i], 0.0, 1.0);
    }
    const double total = p[0] + p[1] + p[2];
    if (std::abs(total - 1.0) > slack)
        throw Error(ErrorCode::Infeasible, "prepared weights sum to " + fmt(total));
    return {std::clamp(W, 0.0, 1.0), p[0] / total, p[1] / total, p[2] / total};
}

Verdict decide_mems(const MemsWeights &from, const MemsWeights &to) {
    const DensityMatrix rho = make_mems(from);
    const DensityMatrix rho2 = make_mems(to);

    if (from.weight_rank() <= 2 && to.weight_rank() <= 2) {
        if (to[0] > from[0])
            return forbidden({Reason::Kind::EofDecrease},
                             "rank-2 target singlet weight " + fmt(to[0]) + " exceeds " + fmt(from[0]));
        const double W = to[0] / from[0];
        return verified(mixture_with_prepare(W, DensityMatrix(basis_projector(0, 1))), rho, rho2,
                        "identity with weight " + fmt(W) + ", otherwise prepare |01>");
    }

    try {
        const MemsProtocolParams params = synthesize_mems_protocol(from, to);
        return verified(params.protocol(), rho, rho2,
                        "identity with weight " + fmt(params.W) + ", otherwise prepare (p01, p00_11, p10) = (" +
                            fmt(params.p01) + ", " + fmt(params.p00_11) + ", " + fmt(params.p10) + ")");
    } catch (const Error &e) {
        if (e.code() != ErrorCode::Infeasible && e.code() != ErrorCode::InvalidArgument) throw;
        return inconclusive(std::string("MEMS synthesis infeasible: ") + e.what());
    }
}

Verdict decide(const DensityMatrix &from, const DensityMatrix &to, const DecideOptions &opts) {
    const bool source_entangled = is_entangled(from);
    const bool target_entangled = is_entangled(to);

    if (!target_entangled) {
        try {
            return verified(Protocol({{1.0, DiscardPrepare{to}}}), from, to,
                            "target is separable: discard and prepare it");
        } catch (const Error &e) {
            if (e.code() != ErrorCode::NotProductDiagonal && e.code() != ErrorCode::NotSeparable) throw;
        }
    }
    if (target_entangled && !source_entangled)
        return forbidden({Reason::Kind::SeparableSource}, "separable source, entangled target");

    if (auto gate = rank_gate(from, to, opts.rank_tol)) return *gate;

    const double tol = opts.family_tol;
    if (auto a = fit_werner(from, tol)) {
        if (auto b = fit_werner(to, tol)) {
            Verdict v = decide_werner(*a, *b);
            if (v.protocol) v = verified(*v.protocol, from, to, v.certificate);
            return v;
        }
    }
    if (auto a = fit_bell(from, tol)) {
        if (auto b = fit_bell(to, tol)) {
            try {
                Verdict v = decide_bell(*a, *b);
                // Sorted weights hide which Bell state dominates; the identity
                // protocol only survives when the raw states coincide.
                if (v.protocol) {
                    const double r = verify_protocol(*v.protocol, from, to);
                    if (r <= kVerdictResidualTolerance) {
                        v.residual = r;
                    } else {
                        v.protocol.reset();
                        v.residual.reset();
                    }
                }
                return v;
            } catch (const Error &e) {
                if (e.code() != ErrorCode::NotEntangled) throw;
            }
        }
    }
    if (auto a = fit_mems(from, tol)) {
        if (auto b = fit_mems(to, tol)) {
            Verdict v = decide_mems(*a, *b);
            if (v.protocol) v = verified(*v.protocol, from, to, v.certificate);
            return v;
        }
    }
    return inconclusive("no shared family rule applies");
}

double verify_protocol(const Protocol &p, const DensityMatrix &from, const DensityMatrix &to) {
    return frobenius_distance(apply_raw(compile(p), from.matrix()), to.matrix());
}

}  // namespace qconvert
