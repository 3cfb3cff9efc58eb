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

#include "qconvert/measures.hpp"

#include <algorithm>

namespace qconvert {

MonotoneTriple bell_monotones(const BellWeights &l) {
    const double d2 = l[2] + l[3];
    const double d3 = l[3];
    return {
        l[0],
        d2 <= kMonotoneZeroDenominator ? kInfinity : (1.0 - 2.0 * l[1]) / d2,
        d3 <= kMonotoneZeroDenominator ? kInfinity : (1.0 - 2.0 * l[1] - 2.0 * l[2]) / d3,
    };
}

int first_violated_monotone(const MonotoneTriple &from, const MonotoneTriple &to, double slack) {
    for (int k = 0; k < 3; ++k) {
        const double f = from[k], t = to[k];
        if (f == kInfinity) continue;
        if (t == kInfinity || f < t - slack) return k;
    }
    return -1;
}

double concurrence(const DensityMatrix &rho) {
    // sqrt(mu_i) are the singular values of A = sqrt(rho) (Y (x) Y) conj(sqrt(rho)).
    // They are read off the Hermitian embedding [[0, A], [A^H, 0]] (spectrum
    // +-sigma_i) so that zero singular values stay at rounding level instead of
    // picking up the square root of eigenvalue noise.
    const EigenDecomposition4 &eig = rho.eig();
    CMat4 sqrt_rho;
    for (std::size_t k = 0; k < 4; ++k) {
        const double v = eig.values[k];
        if (v <= kConcurrenceEigenFloor) continue;
        const CVec4 u = eig.vector(k);
        sqrt_rho += CMat4::outer(u, u) * std::sqrt(v);
    }
    const CMat4 yy = kron2(pauli::Y(), pauli::Y());
    const CMat4 a = sqrt_rho * yy * sqrt_rho.conj();
    const CMat4 ah = a.adjoint();
    CMat<8> emb;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            emb(r, c + 4) = a(r, c);
            emb(r + 4, c) = ah(r, c);
        }
    const auto sv = hermitian_eig(emb).values;
    std::array<double, 4> s;
    for (std::size_t i = 0; i < 4; ++i) s[i] = std::max(0.0, sv[i]);
    return std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double eof_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double eof(const DensityMatrix &rho) { return eof_from_concurrence(concurrence(rho)); }

double negativity(const DensityMatrix &rho) {
    double n = 0.0;
    for (double x : partial_transpose_spectrum(rho))
        if (x < 0.0) n -= x;
    return n;
}

}  // namespace qconvert
