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

#ifndef QCONVERT_MEASURES_HPP
#define QCONVERT_MEASURES_HPP

#include <limits>

#include "qconvert/states.hpp"

namespace qconvert {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// The three Bell-diagonal monotones. e2 and e3 are +inf when their
/// denominators (l3 + l4, resp. l4) vanish; inf >= inf holds, so comparisons
/// use plain IEEE ordering.
struct MonotoneTriple {
    double e1;
    double e2;
    double e3;

    double operator[](int k) const { return k == 0 ? e1 : (k == 1 ? e2 : e3); }
};

/// Denominators at or below this are treated as zero.
inline constexpr double kMonotoneZeroDenominator = 1e-14;

MonotoneTriple bell_monotones(const BellWeights &l);

/// Index (0-based) of the first k with from[k] < to[k] - slack, or -1 if the
/// source dominates the target in every component.
int first_violated_monotone(const MonotoneTriple &from, const MonotoneTriple &to, double slack = 0.0);

/// Eigenvalues of rho at or below this are dropped from sqrt(rho).
inline constexpr double kConcurrenceEigenFloor = 1e-14;

/// Wootters concurrence max(0, s1 - s2 - s3 - s4), s the singular values of
/// sqrt(rho) (Y (x) Y) conj(sqrt(rho)).
double concurrence(const DensityMatrix &rho);

double binary_entropy(double p);
double eof_from_concurrence(double c);
double eof(const DensityMatrix &rho);

double negativity(const DensityMatrix &rho);

}  // namespace qconvert

#endif
