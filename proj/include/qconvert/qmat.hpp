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

// Dense complex matrices of fixed (small) dimension. Everything in the library
// lives on C^2 or C^2 (x) C^2, so the kernel is sized at compile time and never
// allocates.

#ifndef QCONVERT_QMAT_HPP
#define QCONVERT_QMAT_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

#include "qconvert/error.hpp"

namespace qconvert {

using cplx = std::complex<double>;

template <std::size_t N>
using CVec = std::array<cplx, N>;

template <std::size_t N>
struct CMat {
    static constexpr std::size_t dim = N;

    std::array<cplx, N * N> a{};

    cplx &operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

    static CMat zero() { return CMat{}; }

    static CMat identity() {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    /// |u><v|
    static CMat outer(const CVec<N> &u, const CVec<N> &v) {
        CMat m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = u[r] * std::conj(v[c]);
        return m;
    }

    CMat adjoint() const {
        CMat m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    CMat transpose() const {
        CMat m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = (*this)(c, r);
        return m;
    }

    CMat conj() const {
        CMat m;
        for (std::size_t i = 0; i < N * N; ++i) m.a[i] = std::conj(a[i]);
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto &x : a) s += std::norm(x);
        return std::sqrt(s);
    }

    bool is_finite() const {
        for (const auto &x : a)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        return true;
    }

    CMat &operator+=(const CMat &o) {
        for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
        return *this;
    }
    CMat &operator-=(const CMat &o) {
        for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
        return *this;
    }
    CMat &operator*=(cplx s) {
        for (auto &x : a) x *= s;
        return *this;
    }

    friend CMat operator+(CMat l, const CMat &r) { return l += r; }
    friend CMat operator-(CMat l, const CMat &r) { return l -= r; }
    friend CMat operator*(CMat m, cplx s) { return m *= s; }
    friend CMat operator*(cplx s, CMat m) { return m *= s; }

    friend CMat operator*(const CMat &l, const CMat &r) {
        CMat m;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx lik = l(i, k);
                if (lik == cplx(0.0)) continue;
                for (std::size_t j = 0; j < N; ++j) m(i, j) += lik * r(k, j);
            }
        return m;
    }

    friend CVec<N> operator*(const CMat &m, const CVec<N> &v) {
        CVec<N> out{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) out[i] += m(i, j) * v[j];
        return out;
    }
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;
using CVec2 = CVec<2>;
using CVec4 = CVec<4>;

template <std::size_t N>
double frobenius_distance(const CMat<N> &x, const CMat<N> &y) {
    return (x - y).frobenius_norm();
}

template <std::size_t N>
double hermiticity_defect(const CMat<N> &m) {
    return (m - m.adjoint()).frobenius_norm();
}

template <std::size_t N>
cplx inner(const CVec<N> &u, const CVec<N> &v) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

template <std::size_t N>
double norm(const CVec<N> &v) {
    return std::sqrt(std::real(inner(v, v)));
}

/// (a (x) b)[2i+k][2j+l] = a[i][j] * b[k][l]
CMat4 kron2(const CMat2 &a, const CMat2 &b);
CVec4 kron2(const CVec2 &a, const CVec2 &b);

namespace pauli {
CMat2 I();
CMat2 X();
CMat2 Y();
CMat2 Z();
}  // namespace pauli

enum class Subsystem { A, B };

/// Spectrum sorted non-ascending; column k of `vectors` is the k-th eigenvector.
template <std::size_t N>
struct EigenDecomposition {
    std::array<double, N> values{};
    CMat<N> vectors;

    CVec<N> vector(std::size_t k) const {
        CVec<N> v;
        for (std::size_t i = 0; i < N; ++i) v[i] = vectors(i, k);
        return v;
    }

    CMat<N> reconstruct() const {
        CMat<N> m;
        for (std::size_t k = 0; k < N; ++k) {
            const CVec<N> v = vector(k);
            m += CMat<N>::outer(v, v) * values[k];
        }
        return m;
    }
};

using EigenDecomposition4 = EigenDecomposition<4>;

inline constexpr double kHermitianTolerance = 1e-9;
inline constexpr double kDefaultRankTolerance = 1e-9;

/// Cyclic complex Jacobi. Throws NotHermitian when ||m - m^H||_F exceeds
/// kHermitianTolerance; the anti-Hermitian residue is otherwise discarded.
template <std::size_t N>
EigenDecomposition<N> hermitian_eig(const CMat<N> &m);

extern template EigenDecomposition<2> hermitian_eig<2>(const CMat<2> &);
extern template EigenDecomposition<4> hermitian_eig<4>(const CMat<4> &);
extern template EigenDecomposition<8> hermitian_eig<8>(const CMat<8> &);

CMat4 partial_transpose(const CMat4 &m, Subsystem subsystem);
CMat2 partial_trace(const CMat4 &m, Subsystem keep);

/// Number of eigenvalues strictly greater than tol.
int numeric_rank(std::span<const double> eigenvalues, double tol = kDefaultRankTolerance);

bool is_unitary(const CMat2 &u, double tol = 1e-10);

}  // namespace qconvert

#endif
