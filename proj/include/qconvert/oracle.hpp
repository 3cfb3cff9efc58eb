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

// Randomized verification: seeded samplers for states and separable channels,
// falsification harnesses that try to break the rank and monotone claims, and
// a derivative-free protocol search for pairs no closed-form rule decides.
//
// Every trial derives its own generator from (seed, trial index), so reports
// are reproducible and trials can be replayed one at a time.

#ifndef QCONVERT_ORACLE_HPP
#define QCONVERT_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qconvert/convertibility.hpp"

namespace qconvert {

using Rng = std::mt19937_64;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// G G^H / tr(G G^H) with G a 4 x rank complex Gaussian matrix.
DensityMatrix random_density(Rng &rng, int rank = 4);

/// random_density restricted to negativity > min_negativity (rejection).
DensityMatrix random_entangled_density(Rng &rng, int rank, double min_negativity = 1e-4);

/// Haar-distributed unitary (QR of a complex Gaussian matrix).
CMat2 random_unitary2(Rng &rng);
CMat4 random_unitary4(Rng &rng);

/// n_kraus random product Kraus pairs with complex Gaussian factors (each
/// factor occasionally rank one), rescaled so that sum E^H E <= 0.95 I, then
/// completed by product projectors sqrt(q) |ab><ab| obtained from a product
/// decomposition of the (separable) remainder. Draws whose remainder is
/// entangled, or whose completion misses 1e-10, are resampled. n_kraus == 1
/// yields a random product unitary. Throws SamplingExhausted.
SeparableChannel random_separable_channel(std::uint64_t seed, int n_kraus);

struct Finding {
    std::uint64_t trial;
    std::uint64_t seed;  // derived per-trial seed; replays the trial alone
    std::string kind;
    std::vector<double> diagnostics;
};

struct SearchReport {
    std::uint64_t trials = 0;
    std::vector<Finding> counterexamples;
    /// Diagnostics of the first few trials, kept regardless of outcome.
    std::vector<Finding> samples;
    double elapsed = 0.0;  // seconds
};

enum class ChannelSource {
    Separable,      // random_separable_channel
    GlobalUnitary,  // negative control: spectrum-preserving global unitaries
};

inline constexpr double kCounterexampleNegativity = 1e-6;
inline constexpr double kRankGapLow = 1e-12;
inline constexpr double kRankGapHigh = 1e-6;

/// Entangled inputs of rank 3 and 4 through random channels. A counterexample
/// is an output with negativity > 1e-6 whose spectrum has a clear gap (an
/// eigenvalue < 1e-12 directly below one > 1e-6) and fewer eigenvalues above
/// 1e-6 than the input has.
SearchReport falsify_rank_monotonicity(std::uint64_t trials, std::uint64_t seed,
                                       ChannelSource source = ChannelSource::Separable);

inline constexpr double kAuditTolerance = 1e-9;

/// Random mixtures of catalog channels on entangled Bell-diagonal states
/// (no monotone may increase when the output stays entangled), plus random
/// LOCC-certified mixtures on random states (concurrence may not increase).
/// Sample diagnostics: lambda_in[4], lambda_out[4], E_in[3], E_out[3].
SearchReport monotone_audit(std::uint64_t trials, std::uint64_t seed);

struct ConvertSearchResult {
    double best_distance;
    std::optional<Protocol> protocol;  // set when best_distance < kSearchSuccess
    int evaluations;
};

inline constexpr double kSearchSuccess = 1e-6;

/// Nelder-Mead restarts over mixtures of the catalog unitaries and one
/// discard-and-prepare of a computational-basis diagonal state. `budget` is
/// the total number of objective evaluations across all restarts.
ConvertSearchResult convert_search(const DensityMatrix &from, const DensityMatrix &to, int budget,
                                   std::uint64_t seed, int restarts = 10);

}  // namespace qconvert

#endif
