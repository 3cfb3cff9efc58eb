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

#include "qconvert/channels.hpp"

#include <sstream>

namespace qconvert {

double completeness_residual(std::span<const LocalKrausPair> kraus) {
    CMat4 sum;
    for (const auto &k : kraus) {
        const CMat4 e = k.op();
        sum += e.adjoint() * e;
    }
    return frobenius_distance(sum, CMat4::identity());
}

SeparableChannel::SeparableChannel(std::vector<LocalKrausPair> kraus, bool locc_certified)
    : kraus_(std::move(kraus)), locc_certified_(locc_certified) {
    if (kraus_.empty()) throw Error(ErrorCode::NotTracePreserving, "channel has no Kraus operators");
    for (const auto &k : kraus_)
        if (!k.a.is_finite() || !k.b.is_finite())
            throw Error(ErrorCode::InvalidArgument, "Kraus operator has non-finite entries");
    const double r = qconvert::completeness_residual(kraus_);
    if (!(r <= kCompletenessTolerance)) {
        std::ostringstream os;
        os << "Kraus set is not trace preserving (||sum E^H E - I||_F = " << r << ")";
        throw Error(ErrorCode::NotTracePreserving, os.str());
    }
}

double SeparableChannel::completeness_residual() const {
    return qconvert::completeness_residual(kraus_);
}

SeparableChannel local_unitary_channel(const CMat2 &ua, const CMat2 &ub) {
    if (!is_unitary(ua) || !is_unitary(ub))
        throw Error(ErrorCode::NotUnitary, "local operator is not unitary within 1e-10");
    return SeparableChannel({{ua, ub}}, true);
}

SeparableChannel identity_channel() { return local_unitary_channel(CMat2::identity(), CMat2::identity()); }

namespace {

// Product-diagonal fast path: exact when sigma is diagonal in |ij>.
std::optional<std::vector<ProductTerm>> computational_decomposition(const DensityMatrix &sigma) {
    const CMat4 &m = sigma.matrix();
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (r != c && std::abs(m(r, c)) > 1e-15) return std::nullopt;
    std::vector<ProductTerm> terms;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double p = m(2 * i + j, 2 * i + j).real();
            if (p <= 0.0) continue;
            CVec2 a{}, b{};
            a[static_cast<std::size_t>(i)] = 1.0;
            b[static_cast<std::size_t>(j)] = 1.0;
            terms.push_back({p, a, b});
        }
    return terms;
}

}  // namespace

SeparableChannel discard_prepare_channel(const DensityMatrix &sigma) {
    if (is_entangled(sigma))
        throw Error(ErrorCode::NotSeparable, "discard-and-prepare target is entangled");
    auto terms = computational_decomposition(sigma);
    if (!terms) terms = separable_decomposition(sigma);
    if (!terms || terms->empty())
        throw Error(ErrorCode::NotProductDiagonal,
                    "no product decomposition found for the prepared state");

    double total = 0.0;
    for (const auto &t : *terms) total += t.p;

    std::vector<LocalKrausPair> kraus;
    for (const auto &t : *terms) {
        const double amp = std::sqrt(t.p / total);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                LocalKrausPair k;
                // sqrt(p) |a><i| (x) |b><j|
                for (std::size_t r = 0; r < 2; ++r) {
                    k.a(r, i) = amp * t.a[r];
                    k.b(r, j) = t.b[r];
                }
                kraus.push_back(k);
            }
    }
    return SeparableChannel(std::move(kraus), true);
}

SeparableChannel mix(std::span<const WeightedChannel> parts) {
    if (parts.empty()) throw Error(ErrorCode::BadWeights, "mixture has no parts");
    double total = 0.0;
    for (const auto &p : parts) {
        if (!(p.weight >= 0.0)) throw Error(ErrorCode::BadWeights, "mixture weight is negative");
        total += p.weight;
    }
    if (std::abs(total - 1.0) > kProtocolWeightTolerance) {
        std::ostringstream os;
        os << "mixture weights sum to " << total << ", expected 1";
        throw Error(ErrorCode::BadWeights, os.str());
    }
    std::vector<LocalKrausPair> kraus;
    bool certified = true;
    for (const auto &p : parts) {
        certified = certified && p.channel.locc_certified();
        if (p.weight == 0.0) continue;
        const double s = std::sqrt(p.weight / total);
        for (const auto &k : p.channel.kraus()) kraus.push_back({k.a * s, k.b});
    }
    return SeparableChannel(std::move(kraus), certified);
}

CMat4 apply_raw(const SeparableChannel &ch, const CMat4 &rho) {
    CMat4 out;
    for (const auto &k : ch.kraus()) {
        const CMat4 e = k.op();
        out += e * rho * e.adjoint();
    }
    return out;
}

DensityMatrix apply(const SeparableChannel &ch, const DensityMatrix &rho) {
    return DensityMatrix(apply_raw(ch, rho.matrix()));
}

Protocol::Protocol(std::vector<WeightedAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw Error(ErrorCode::BadWeights, "protocol has no atoms");
    double total = 0.0;
    for (const auto &wa : atoms_) {
        if (!(wa.weight >= 0.0 && wa.weight <= 1.0 + kProtocolWeightTolerance))
            throw Error(ErrorCode::BadWeights, "protocol weight outside [0, 1]");
        total += wa.weight;
        if (const auto *u = std::get_if<LocalUnitary>(&wa.atom)) {
            if (!is_unitary(u->ua) || !is_unitary(u->ub))
                throw Error(ErrorCode::NotUnitary, "protocol local unitary is not unitary");
        } else if (is_entangled(std::get<DiscardPrepare>(wa.atom).target)) {
            throw Error(ErrorCode::NotSeparable, "protocol prepares an entangled state");
        }
    }
    if (std::abs(total - 1.0) > kProtocolWeightTolerance) {
        std::ostringstream os;
        os << "protocol weights sum to " << total << ", expected 1";
        throw Error(ErrorCode::BadWeights, os.str());
    }
}

Protocol Protocol::identity() {
    return Protocol({{1.0, LocalUnitary{CMat2::identity(), CMat2::identity()}}});
}

SeparableChannel atom_channel(const ProtocolAtom &atom) {
    if (const auto *u = std::get_if<LocalUnitary>(&atom)) return local_unitary_channel(u->ua, u->ub);
    return discard_prepare_channel(std::get<DiscardPrepare>(atom).target);
}

SeparableChannel compile(const Protocol &p) {
    std::vector<WeightedChannel> parts;
    parts.reserve(p.atoms().size());
    for (const auto &wa : p.atoms()) parts.push_back({wa.weight, atom_channel(wa.atom)});
    return mix(parts);
}

RenormalizedProtocol renormalize_probabilistic(std::span<const ProbabilisticBranch> branches) {
    if (branches.empty()) throw Error(ErrorCode::BadWeights, "no branches");
    double weight_sum = 0.0;
    double success = 0.0;
    for (const auto &b : branches) {
        if (!(b.weight >= 0.0)) throw Error(ErrorCode::BadWeights, "branch weight is negative");
        if (!(b.success_prob > 0.0 && b.success_prob <= 1.0))
            throw Error(ErrorCode::BadWeights, "branch success probability must lie in (0, 1]");
        weight_sum += b.weight;
        success += b.weight * b.success_prob;
    }
    if (std::abs(weight_sum - 1.0) > kProtocolWeightTolerance)
        throw Error(ErrorCode::BadWeights, "branch weights must sum to 1");

    std::vector<WeightedAtom> atoms;
    for (const auto &b : branches) {
        const double w = b.weight * b.success_prob / success;
        if (w > 0.0) atoms.push_back({w, b.completion});
    }
    return {Protocol(std::move(atoms)), success};
}

std::array<double, 4> BellAction::act(const std::array<double, 4> &weights) const {
    std::array<double, 4> out{};
    if (kind == Kind::Permutation) {
        for (std::size_t k = 0; k < 4; ++k) out[static_cast<std::size_t>(permutation[k])] += weights[k];
    } else {
        out[static_cast<std::size_t>(pair[0])] = 0.5;
        out[static_cast<std::size_t>(pair[1])] = 0.5;
    }
    return out;
}

namespace {

std::array<int, 4> measure_permutation(const SeparableChannel &ch) {
    std::array<int, 4> perm{};
    for (std::size_t i = 0; i < 4; ++i) {
        const CMat4 image = apply_raw(ch, bell_projector(kBellOrder[i]));
        int found = -1;
        for (std::size_t j = 0; j < 4; ++j)
            if (frobenius_distance(image, bell_projector(kBellOrder[j])) < 1e-10) found = static_cast<int>(j);
        if (found < 0) throw Error(ErrorCode::Internal, "catalog unitary does not permute the Bell basis");
        perm[i] = found;
    }
    return perm;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;
    const std::pair<const char *, std::pair<CMat2, CMat2>> unitaries[] = {
        {"I(x)I", {pauli::I(), pauli::I()}}, {"I(x)X", {pauli::I(), pauli::X()}},
        {"I(x)Y", {pauli::I(), pauli::Y()}}, {"I(x)Z", {pauli::I(), pauli::Z()}},
        {"X(x)I", {pauli::X(), pauli::I()}}, {"Y(x)I", {pauli::Y(), pauli::I()}},
        {"Z(x)I", {pauli::Z(), pauli::I()}},
    };
    for (const auto &[name, ops] : unitaries) {
        SeparableChannel ch = local_unitary_channel(ops.first, ops.second);
        BellAction action{BellAction::Kind::Permutation, measure_permutation(ch), {}};
        out.push_back({name, LocalUnitary{ops.first, ops.second}, std::move(ch), action});
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const DensityMatrix target((bell_projector(kBellOrder[static_cast<std::size_t>(i)]) +
                                        bell_projector(kBellOrder[static_cast<std::size_t>(j)])) *
                                       cplx(0.5));
            std::string name = std::string("replace{") + bell_name(kBellOrder[static_cast<std::size_t>(i)]) +
                               "," + bell_name(kBellOrder[static_cast<std::size_t>(j)]) + "}";
            BellAction action{BellAction::Kind::Replace, {}, {i, j}};
            out.push_back({std::move(name), DiscardPrepare{target}, discard_prepare_channel(target), action});
        }
    return out;
}

}  // namespace

const std::vector<CatalogEntry> &bell_extremal_catalog() {
    static const std::vector<CatalogEntry> catalog = build_catalog();
    return catalog;
}

}  // namespace qconvert
