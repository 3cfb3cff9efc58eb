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

#ifndef QCONVERT_NELDER_MEAD_HPP
#define QCONVERT_NELDER_MEAD_HPP

#include <functional>
#include <span>
#include <vector>

namespace qconvert {

struct NelderMeadResult {
    std::vector<double> x;
    double f;
    int evaluations;
};

struct NelderMeadOptions {
    double step = 0.25;      // initial simplex edge along each axis
    int max_evaluations = 2000;
    double f_target = 0.0;   // stop as soon as f <= f_target
    double f_spread = 1e-24; // stop when f_worst - f_best falls below this
};

/// Downhill simplex with the standard coefficients (reflect 1, expand 2,
/// contract 1/2, shrink 1/2).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)> &f,
                             std::vector<double> x0, const NelderMeadOptions &opts = {});

}  // namespace qconvert

#endif
