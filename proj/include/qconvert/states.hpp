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

#ifndef QCONVERT_STATES_HPP
#define QCONVERT_STATES_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qconvert/qmat.hpp"

namespace qconvert {

/// A validated two-qubit density matrix. The spectrum is computed once at
/// construction and cached; instances are immutable.
class DensityMatrix {
   public:
    /// Throws NotHermitian or OutOfRange (trace, negative eigenvalue).
    explicit DensityMatrix(const CMat4 &m);

    const CMat4 &matrix() const { return mat_; }
    const EigenDecomposition4 &eig() const { return eig_; }
    std::span<const double, 4> eigenvalues() const { return eig_.values; }
    double min_eigenvalue() const { return eig_.values[3]; }

    double distance(const DensityMatrix &other) const {
        return frobenius_distance(mat_, other.mat_);
    }

   private:
    CMat4 mat_;
    EigenDecomposition4 eig_;
};

/// Computational basis index |ab> -> 2a + b.
CVec4 basis_ket(int a, int b);
CMat4 basis_projector(int a, int b);

/// Fixed Bell-basis order. Bell weights lambda_1..lambda_4 attach to these in
/// sequence, so the singlet always carries lambda_1.
enum class BellState { PsiMinus = 0, PhiPlus = 1, PhiMinus = 2, PsiPlus = 3 };

inline constexpr std::array<BellState, 4> kBellOrder = {BellState::PsiMinus, BellState::PhiPlus,
                                                        BellState::PhiMinus, BellState::PsiPlus};

CVec4 bell_ket(BellState s);
CMat4 bell_projector(BellState s);
const char *bell_name(BellState s);
CMat4 singlet_projector();

class WernerParam {
   public:
    /// Singlet weight; throws OutOfRange outside [0, 1].
    explicit WernerParam(double w);
    double w() const { return w_; }

   private:
    double w_;
};

/// Non-ascending weights on the Bell projectors, summing to one.
class BellWeights {
   public:
    explicit BellWeights(const std::array<double, 4> &lambda);
    const std::array<double, 4> &lambda() const { return lambda_; }
    double operator[](std::size_t i) const { return lambda_[i]; }

   private:
    std::array<double, 4> lambda_;
};

/// Mixture weights of the MEMS family
///   (l1 - l3)|psi_s><psi_s| + l3(|00><00| + |11><11|) + l2|01><01| + l4|10><10|.
/// These are decomposition weights, not the spectrum of the resulting matrix.
class MemsWeights {
   public:
    explicit MemsWeights(const std::array<double, 4> &lambda);
    const std::array<double, 4> &lambda() const { return lambda_; }
    double operator[](std::size_t i) const { return lambda_[i]; }
    double singlet_weight() const { return lambda_[0] - lambda_[2]; }
    /// Count of weights above tol; the "rank" used by the MEMS decision rules.
    int weight_rank(double tol = 1e-12) const;

   private:
    std::array<double, 4> lambda_;
};

inline constexpr double kWeightTolerance = 1e-12;

DensityMatrix make_werner(const WernerParam &w);
DensityMatrix make_bell_diagonal(const BellWeights &l);
DensityMatrix make_mems(const MemsWeights &l);

struct GeneralFamily {};
using FamilyTag = std::variant<WernerParam, BellWeights, MemsWeights, GeneralFamily>;

std::string family_name(const FamilyTag &tag);

inline constexpr double kDefaultFamilyTolerance = 1e-8;

/// Raw weights <B_k|rho|B_k> in kBellOrder (not sorted).
std::array<double, 4> bell_basis_weights(const CMat4 &m);

std::optional<WernerParam> fit_werner(const DensityMatrix &rho, double tol = kDefaultFamilyTolerance);
/// Sorted weights; the state need not carry its largest weight on the singlet.
std::optional<BellWeights> fit_bell(const DensityMatrix &rho, double tol = kDefaultFamilyTolerance);
std::optional<MemsWeights> fit_mems(const DensityMatrix &rho, double tol = kDefaultFamilyTolerance);

/// Most specific family first: Werner, Bell-diagonal, MEMS, General.
FamilyTag classify_family(const DensityMatrix &rho, double tol = kDefaultFamilyTolerance);

/// Partial transpose (on B) has an eigenvalue below -1e-10. Exact in 2x2.
bool is_entangled(const DensityMatrix &rho);
inline constexpr double kPptTolerance = 1e-10;

std::array<double, 4> partial_transpose_spectrum(const DensityMatrix &rho);

struct StateScalars {
    double purity;
    double entropy;  // bits
    int rank;
};

StateScalars state_scalars(const DensityMatrix &rho, double rank_tol = kDefaultRankTolerance);

/// One pure product component p |a><a| (x) |b><b| with unit a, b.
struct ProductTerm {
    double p;
    CVec2 a;
    CVec2 b;
};

/// Writes a separable state as a convex mixture of at most four pure product
/// states (Wootters' zero-concurrence construction). Returns nullopt when the
/// state is entangled or the reconstruction misses rho by more than tol.
std::optional<std::vector<ProductTerm>> separable_decomposition(const DensityMatrix &rho,
                                                                double tol = 1e-8);

}  // namespace qconvert

#endif
