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

#include "qconvert/states.hpp"

#include <algorithm>
#include <functional>
#include <numbers>
#include <sstream>

namespace qconvert {

namespace {

std::string describe(const std::array<double, 4> &l) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << l[0] << ", " << l[1] << ", " << l[2] << ", " << l[3] << ")";
    return os.str();
}

// Shared validation for the two four-weight parameterizations.
std::array<double, 4> checked_weights(const std::array<double, 4> &l, const char *what) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!std::isfinite(l[i]))
            throw Error(ErrorCode::OutOfRange, std::string(what) + ": non-finite weight");
        if (l[i] < -kWeightTolerance)
            throw Error(ErrorCode::OutOfRange,
                        std::string(what) + ": negative weight in " + describe(l));
        if (i > 0 && l[i] > l[i - 1] + kWeightTolerance)
            throw Error(ErrorCode::OutOfRange,
                        std::string(what) + ": weights must be non-ascending, got " + describe(l));
        sum += l[i];
    }
    if (std::abs(sum - 1.0) > kWeightTolerance)
        throw Error(ErrorCode::OutOfRange,
                    std::string(what) + ": weights must sum to 1, got " + describe(l));
    std::array<double, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = std::max(0.0, l[i]);
    return out;
}

std::array<double, 4> normalized(std::array<double, 4> l) {
    for (auto &x : l) x = std::max(0.0, x);
    const double s = l[0] + l[1] + l[2] + l[3];
    for (auto &x : l) x /= s;
    return l;
}

}  // namespace

DensityMatrix::DensityMatrix(const CMat4 &m) : mat_(m), eig_(hermitian_eig(m)) {
    const cplx tr = m.trace();
    if (std::abs(tr - cplx(1.0)) > 1e-9) {
        std::ostringstream os;
        os << "density matrix trace is " << tr.real() << ", expected 1";
        throw Error(ErrorCode::OutOfRange, os.str());
    }
    if (eig_.values[3] < -1e-10) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << eig_.values[3];
        throw Error(ErrorCode::OutOfRange, os.str());
    }
}

CVec4 basis_ket(int a, int b) {
    CVec4 v{};
    v[static_cast<std::size_t>(2 * a + b)] = 1.0;
    return v;
}

CMat4 basis_projector(int a, int b) {
    const CVec4 v = basis_ket(a, b);
    return CMat4::outer(v, v);
}

CVec4 bell_ket(BellState s) {
    const double h = std::numbers::sqrt2 / 2.0;
    switch (s) {
        case BellState::PsiMinus: return {0.0, h, -h, 0.0};
        case BellState::PhiPlus: return {h, 0.0, 0.0, h};
        case BellState::PhiMinus: return {h, 0.0, 0.0, -h};
        case BellState::PsiPlus: return {0.0, h, h, 0.0};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown Bell state");
}

CMat4 bell_projector(BellState s) {
    const CVec4 v = bell_ket(s);
    return CMat4::outer(v, v);
}

const char *bell_name(BellState s) {
    switch (s) {
        case BellState::PsiMinus: return "Psi-";
        case BellState::PhiPlus: return "Phi+";
        case BellState::PhiMinus: return "Phi-";
        case BellState::PsiPlus: return "Psi+";
    }
    return "?";
}

CMat4 singlet_projector() { return bell_projector(BellState::PsiMinus); }

WernerParam::WernerParam(double w) : w_(w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        std::ostringstream os;
        os << "Werner weight must lie in [0, 1], got " << w;
        throw Error(ErrorCode::OutOfRange, os.str());
    }
}

BellWeights::BellWeights(const std::array<double, 4> &lambda)
    : lambda_(checked_weights(lambda, "Bell weights")) {}

MemsWeights::MemsWeights(const std::array<double, 4> &lambda)
    : lambda_(checked_weights(lambda, "MEMS weights")) {}

int MemsWeights::weight_rank(double tol) const {
    return static_cast<int>(
        std::count_if(lambda_.begin(), lambda_.end(), [tol](double x) { return x > tol; }));
}

DensityMatrix make_werner(const WernerParam &w) {
    return DensityMatrix(singlet_projector() * w.w() + CMat4::identity() * ((1.0 - w.w()) / 4.0));
}

DensityMatrix make_bell_diagonal(const BellWeights &l) {
    CMat4 m;
    for (std::size_t i = 0; i < 4; ++i) m += bell_projector(kBellOrder[i]) * l[i];
    return DensityMatrix(m);
}

DensityMatrix make_mems(const MemsWeights &l) {
    const CMat4 m = singlet_projector() * l.singlet_weight() +
                    (basis_projector(0, 0) + basis_projector(1, 1)) * l[2] +
                    basis_projector(0, 1) * l[1] + basis_projector(1, 0) * l[3];
    return DensityMatrix(m);
}

std::string family_name(const FamilyTag &tag) {
    struct Visitor {
        std::string operator()(const WernerParam &) const { return "werner"; }
        std::string operator()(const BellWeights &) const { return "bell_diagonal"; }
        std::string operator()(const MemsWeights &) const { return "mems"; }
        std::string operator()(const GeneralFamily &) const { return "general"; }
    };
    return std::visit(Visitor{}, tag);
}

std::array<double, 4> bell_basis_weights(const CMat4 &m) {
    std::array<double, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        const CVec4 v = bell_ket(kBellOrder[i]);
        out[i] = std::real(inner(v, m * v));
    }
    return out;
}

std::optional<WernerParam> fit_werner(const DensityMatrix &rho, double tol) {
    // Least squares on rho - I/4 = w (S - I/4), with ||S - I/4||_F^2 = 3/4.
    const double overlap = std::real((singlet_projector() * rho.matrix()).trace());
    double w = (4.0 * overlap - 1.0) / 3.0;
    if (w < -tol || w > 1.0 + tol) return std::nullopt;
    w = std::clamp(w, 0.0, 1.0);
    const WernerParam param(w);
    if (make_werner(param).distance(rho) > tol) return std::nullopt;
    return param;
}

std::optional<BellWeights> fit_bell(const DensityMatrix &rho, double tol) {
    const std::array<double, 4> raw = bell_basis_weights(rho.matrix());
    CMat4 rebuilt;
    for (std::size_t i = 0; i < 4; ++i) rebuilt += bell_projector(kBellOrder[i]) * raw[i];
    if (frobenius_distance(rebuilt, rho.matrix()) > tol) return std::nullopt;
    std::array<double, 4> sorted = normalized(raw);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    return BellWeights(sorted);
}

std::optional<MemsWeights> fit_mems(const DensityMatrix &rho, double tol) {
    const CMat4 &m = rho.matrix();
    const double l3 = 0.5 * (m(0, 0).real() + m(3, 3).real());
    const double singlet = -2.0 * m(1, 2).real();
    std::array<double, 4> l = {singlet + l3, m(1, 1).real() - singlet / 2.0, l3,
                               m(2, 2).real() - singlet / 2.0};
    for (std::size_t i = 0; i < 4; ++i) {
        if (l[i] < -tol) return std::nullopt;
        if (i > 0 && l[i] > l[i - 1] + tol) return std::nullopt;
    }
    l = normalized(l);
    for (std::size_t i = 1; i < 4; ++i) l[i] = std::min(l[i], l[i - 1]);
    l = normalized(l);
    try {
        const MemsWeights weights(l);
        if (make_mems(weights).distance(rho) > tol) return std::nullopt;
        return weights;
    } catch (const Error &) {
        return std::nullopt;
    }
}

FamilyTag classify_family(const DensityMatrix &rho, double tol) {
    if (auto w = fit_werner(rho, tol)) return *w;
    if (auto b = fit_bell(rho, tol)) return *b;
    if (auto m = fit_mems(rho, tol)) return *m;
    return GeneralFamily{};
}

std::array<double, 4> partial_transpose_spectrum(const DensityMatrix &rho) {
    return hermitian_eig(partial_transpose(rho.matrix(), Subsystem::B)).values;
}

bool is_entangled(const DensityMatrix &rho) {
    return partial_transpose_spectrum(rho)[3] < -kPptTolerance;
}

StateScalars state_scalars(const DensityMatrix &rho, double rank_tol) {
    double purity = 0.0;
    for (const auto &x : rho.matrix().a) purity += std::norm(x);
    double entropy = 0.0;
    for (double l : rho.eigenvalues())
        if (l > 1e-12) entropy -= l * std::log2(l);
    return {purity, entropy, numeric_rank(rho.eigenvalues(), rank_tol)};
}

namespace {

CVec4 spin_flip(const CVec4 &v) {
    static const CMat4 yy = kron2(pauli::Y(), pauli::Y());
    CVec4 c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = std::conj(v[i]);
    return yy * c;
}

// Takagi factorization A = U diag(s) U^T of a complex symmetric 4x4 matrix via
// the real symmetric embedding [[Re A, Im A], [Im A, -Re A]]. Column k of the
// returned U satisfies A conj(u_k) = s_k u_k.
std::pair<std::array<double, 4>, CMat4> takagi(const CMat4 &a) {
    CMat<8> emb;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const double re = 0.5 * (a(r, c).real() + a(c, r).real());
            const double im = 0.5 * (a(r, c).imag() + a(c, r).imag());
            emb(r, c) = re;
            emb(r, c + 4) = im;
            emb(r + 4, c) = im;
            emb(r + 4, c + 4) = -re;
        }
    const EigenDecomposition<8> eig = hermitian_eig(emb);

    std::array<double, 4> s{};
    CMat4 u;
    std::size_t accepted = 0;
    for (std::size_t k = 0; k < 8 && accepted < 4; ++k) {
        CVec4 cand;
        for (std::size_t i = 0; i < 4; ++i)
            cand[i] = cplx(eig.vectors(i, k).real(), eig.vectors(i + 4, k).real());
        // Orthogonalize inside the current singular subspace (only the null
        // space is degenerate enough to need it).
        for (std::size_t j = 0; j < accepted; ++j) {
            CVec4 uj;
            for (std::size_t i = 0; i < 4; ++i) uj[i] = u(i, j);
            const cplx proj = inner(uj, cand);
            for (std::size_t i = 0; i < 4; ++i) cand[i] -= proj * uj[i];
        }
        const double n = norm(cand);
        if (n < 1e-6) continue;
        for (std::size_t i = 0; i < 4; ++i) u(i, accepted) = cand[i] / n;
        s[accepted] = std::max(0.0, eig.values[k]);
        ++accepted;
    }
    if (accepted != 4) throw Error(ErrorCode::Internal, "Takagi factorization lost rank");
    return {s, u};
}

// Unit phases e^{i phi_j} with d1 e^{i phi_1} = d2 e^{i phi_2} + d3 e^{i phi_3} + d4 e^{i phi_4},
// d non-ascending, d1 <= d2 + d3 + d4. phi_1 = 0.
std::array<cplx, 4> close_polygon(const std::array<double, 4> &d) {
    std::array<cplx, 4> u = {1.0, 1.0, 1.0, 1.0};
    const double r = std::clamp(d[0] - d[1], std::abs(d[2] - d[3]), d[2] + d[3]);
    if (d[1] > 0.0 && d[0] > 0.0) {
        const double c = std::clamp((d[0] * d[0] + d[1] * d[1] - r * r) / (2.0 * d[0] * d[1]), -1.0, 1.0);
        u[1] = std::polar(1.0, std::acos(c));
    }
    const cplx rem = d[0] - d[1] * u[1];
    const double rm = std::abs(rem);
    if (d[2] > 0.0) {
        if (rm > 0.0) {
            const double c = std::clamp((d[2] * d[2] + rm * rm - d[3] * d[3]) / (2.0 * d[2] * rm), -1.0, 1.0);
            u[2] = std::polar(1.0, std::arg(rem) + std::acos(c));
        }
    }
    const cplx last = rem - d[2] * u[2];
    if (d[3] > 0.0 && std::abs(last) > 0.0) u[3] = last / std::abs(last);
    else if (d[3] > 0.0) u[3] = -u[2];
    return u;
}

}  // namespace

std::optional<std::vector<ProductTerm>> separable_decomposition(const DensityMatrix &rho, double tol) {
    const EigenDecomposition4 &eig = rho.eig();
    std::array<CVec4, 4> v;
    for (std::size_t k = 0; k < 4; ++k) {
        const double scale = std::sqrt(std::max(0.0, eig.values[k]));
        for (std::size_t i = 0; i < 4; ++i) v[k][i] = eig.vectors(i, k) * scale;
    }

    CMat4 tau;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) tau(i, j) = inner(v[i], spin_flip(v[j]));

    const auto [s, u] = takagi(tau);

    // x_i = sum_j U_ji v_j has <x_i|x~_j> = s_i delta_ij.
    std::array<CVec4, 4> x{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t c = 0; c < 4; ++c) x[i][c] += u(j, i) * v[j][c];

    if (s[0] > s[1] + s[2] + s[3] + tol) return std::nullopt;

    // y_1 = x_1, y_j = i x_j flips the sign of the spin-flip overlap.
    std::array<CVec4, 4> y = x;
    for (std::size_t j = 1; j < 4; ++j)
        for (auto &c : y[j]) c *= cplx(0.0, 1.0);

    // Phases e^{i theta_j} with sum_j e^{-2 i theta_j} <y_j|y~_j> = 0.
    const std::array<cplx, 4> closure = close_polygon(s);
    std::array<cplx, 4> phase;
    for (std::size_t j = 0; j < 4; ++j) phase[j] = std::polar(1.0, -0.5 * std::arg(closure[j]));

    static constexpr int hadamard[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};

    std::vector<ProductTerm> terms;
    CMat4 rebuilt;
    for (std::size_t k = 0; k < 4; ++k) {
        CVec4 z{};
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t c = 0; c < 4; ++c) z[c] += 0.5 * hadamard[k][j] * phase[j] * y[j][c];
        const double zn = norm(z);
        if (zn * zn < 1e-15) continue;

        // Factor z / |z| = a (x) b from the 2x2 reshaping.
        const std::size_t row = std::norm(z[0]) + std::norm(z[1]) >= std::norm(z[2]) + std::norm(z[3]) ? 0 : 1;
        CVec2 b = {z[2 * row], z[2 * row + 1]};
        const double bn = norm(b);
        for (auto &c : b) c /= bn;
        CVec2 a = {std::conj(b[0]) * z[0] + std::conj(b[1]) * z[1],
                   std::conj(b[0]) * z[2] + std::conj(b[1]) * z[3]};
        const double an = norm(a);
        for (auto &c : a) c /= an;

        ProductTerm term{zn * zn, a, b};
        const CVec4 ab = kron2(a, b);
        rebuilt += CMat4::outer(ab, ab) * term.p;
        terms.push_back(term);
    }

    if (frobenius_distance(rebuilt, rho.matrix()) > tol) return std::nullopt;
    return terms;
}

}  // namespace qconvert
