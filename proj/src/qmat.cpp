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

#include "qconvert/qmat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qconvert {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::NotSeparable: return "NotSeparable";
        case ErrorCode::NotProductDiagonal: return "NotProductDiagonal";
        case ErrorCode::NotTracePreserving: return "NotTracePreserving";
        case ErrorCode::BadWeights: return "BadWeights";
        case ErrorCode::NotEntangled: return "NotEntangled";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::SamplingExhausted: return "SamplingExhausted";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

CMat4 kron2(const CMat2 &a, const CMat2 &b) {
    CMat4 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

CVec4 kron2(const CVec2 &a, const CVec2 &b) {
    return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

namespace pauli {
CMat2 I() { return CMat2::identity(); }
CMat2 X() {
    CMat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}
CMat2 Y() {
    CMat2 m;
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}
CMat2 Z() {
    CMat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}
}  // namespace pauli

namespace {

template <std::size_t N>
double off_diagonal_mass(const CMat<N> &m) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            if (r != c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;

}  // namespace

template <std::size_t N>
EigenDecomposition<N> hermitian_eig(const CMat<N> &m) {
    if (!m.is_finite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTolerance) {
        std::ostringstream os;
        os << "matrix is not Hermitian (||M - M^H||_F = " << defect << ")";
        throw Error(ErrorCode::NotHermitian, os.str());
    }

    // Work on the Hermitian part so round-off asymmetry never accumulates.
    CMat<N> a = (m + m.adjoint()) * cplx(0.5);
    for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();
    CMat<N> v = CMat<N>::identity();

    const double threshold = 1e-14 * std::max(1.0, m.frobenius_norm());

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_mass(a) < threshold) break;
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx b = a(p, q);
                const double mag = std::abs(b);
                if (mag < 1e-300) continue;
                const cplx phase = std::conj(b) / mag;  // e^{-i arg b}

                // Real rotation on the phase-adjusted 2x2 block.
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const cplx upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

                for (std::size_t k = 0; k < N; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenDecomposition<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

template EigenDecomposition<2> hermitian_eig<2>(const CMat<2> &);
template EigenDecomposition<4> hermitian_eig<4>(const CMat<4> &);
template EigenDecomposition<8> hermitian_eig<8>(const CMat<8> &);

CMat4 partial_transpose(const CMat4 &m, Subsystem subsystem) {
    CMat4 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t l = 0; l < 2; ++l) {
                    if (subsystem == Subsystem::A)
                        out(2 * i + k, 2 * j + l) = m(2 * j + k, 2 * i + l);
                    else
                        out(2 * i + k, 2 * j + l) = m(2 * i + l, 2 * j + k);
                }
    return out;
}

CMat2 partial_trace(const CMat4 &m, Subsystem keep) {
    CMat2 out;
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t t = 0; t < 2; ++t) {
                if (keep == Subsystem::A)
                    out(x, y) += m(2 * x + t, 2 * y + t);
                else
                    out(x, y) += m(2 * t + x, 2 * t + y);
            }
    return out;
}

int numeric_rank(std::span<const double> eigenvalues, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rank tolerance must be positive");
    return static_cast<int>(
        std::count_if(eigenvalues.begin(), eigenvalues.end(), [tol](double x) { return x > tol; }));
}

bool is_unitary(const CMat2 &u, double tol) {
    return u.is_finite() && frobenius_distance(u.adjoint() * u, CMat2::identity()) <= tol;
}

}  // namespace qconvert
