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

#include "qconvert/nelder_mead.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qconvert {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)> &f,
                             std::vector<double> x0, const NelderMeadOptions &opts) {
    const std::size_t n = x0.size();
    int evals = 0;
    // Hard budget: points beyond it are never evaluated and never become best.
    auto eval = [&](const std::vector<double> &x) {
        if (evals >= opts.max_evaluations) return std::numeric_limits<double>::infinity();
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opts.step;
    std::vector<double> fx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fx[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    auto point = [&](double t, const std::vector<double> &worst, std::vector<double> &out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (worst[i] - centroid[i]);
    };

    while (evals < opts.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        if (fx[best] <= opts.f_target || fx[worst] - fx[best] <= opts.f_spread) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / static_cast<double>(n);

        point(-1.0, simplex[worst], trial);
        const double fr = eval(trial);
        if (fr < fx[best]) {
            point(-2.0, simplex[worst], trial2);
            const double fe = eval(trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                fx[worst] = fe;
            } else {
                simplex[worst] = trial;
                fx[worst] = fr;
            }
            continue;
        }
        if (fr < fx[second]) {
            simplex[worst] = trial;
            fx[worst] = fr;
            continue;
        }
        // Outside contraction when the reflection beat the worst vertex, inside otherwise.
        const bool outside = fr < fx[worst];
        point(outside ? -0.5 : 0.5, simplex[worst], trial2);
        const double fc = eval(trial2);
        if (fc < (outside ? fr : fx[worst])) {
            simplex[worst] = trial2;
            fx[worst] = fc;
            continue;
        }
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == best) continue;
            for (std::size_t i = 0; i < n; ++i)
                simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
            fx[k] = eval(simplex[k]);
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(fx.begin(), fx.end()) - fx.begin());
    return {simplex[best], fx[best], evals};
}

}  // namespace qconvert
