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

// Acceptance run. One PASS/FAIL line per criterion; exit status is the number
// of failures. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qconvert/channels.hpp"
#include "qconvert/convertibility.hpp"
#include "qconvert/measures.hpp"
#include "qconvert/oracle.hpp"
#include "qconvert/qmat.hpp"
#include "qconvert/states.hpp"
#include "test_util.hpp"

using namespace qconvert;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string g(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

// 1. Renormalized probabilistic protocol.
Outcome renormalization() {
    const ProbabilisticBranch branches[] = {
        {0.5, 1.0, LocalUnitary{pauli::I(), pauli::I()}},
        {0.5, 0.5, DiscardPrepare{make_werner(WernerParam(0))}},
    };
    const auto r = renormalize_probabilistic(branches);
    const auto &atoms = r.protocol.atoms();
    if (atoms.size() != 2) return {false, "expected 2 atoms"};
    const double e0 = std::abs(r.success_probability - 0.75);
    const double e1 = std::abs(atoms[0].weight - 2.0 / 3.0);
    const double e2 = std::abs(atoms[1].weight - 1.0 / 3.0);
    const double worst = std::max({e0, e1, e2});
    return {worst <= 1e-15, "success " + g(r.success_probability) + ", weights " + g(atoms[0].weight) + "/" +
                                g(atoms[1].weight) + ", max error " + g(worst)};
}

bool reference_bell(const std::array<double, 4> &a, const std::array<double, 4> &b) {
    const auto ea = testutil::reference_monotones(a[0], a[1], a[2], a[3]);
    const auto eb = testutil::reference_monotones(b[0], b[1], b[2], b[3]);
    return ea.e1 >= eb.e1 && ea.e2 >= eb.e2 && ea.e3 >= eb.e3;
}

// 2. Bell-diagonal decisions against direct evaluation of the monotones.
Outcome bell_decisions() {
    const auto t0 = Clock::now();
    const auto ok = decide_bell(BellWeights({0.7, 0.1, 0.1, 0.1}), BellWeights({0.6, 0.2, 0.1, 0.1}));
    const auto no = decide_bell(BellWeights({0.6, 0.4, 0, 0}), BellWeights({0.7, 0.1, 0.1, 0.1}));
    const bool examples = ok.kind == VerdictKind::Convertible && no.kind == VerdictKind::Forbidden && no.reason &&
                          no.reason->kind == Reason::Kind::MonotoneE && no.reason->monotone == 1;

    // 20 x 20 x 20 grid over ordered entangled weights: l1, then the split of
    // the remainder between l2 and (l3, l4).
    constexpr int n = 20;
    auto point = [](int i, int j, int k) {
        const double l1 = 0.5 + 0.5 * (i + 1) / n, rest = 1.0 - l1;
        const double l2 = rest * (1.0 / 3.0 + (2.0 / 3.0) * j / (n - 1));
        const double r2 = rest - l2;
        const double l3 = std::min(l2, r2 * (0.5 + 0.5 * k / (n - 1)));
        return std::array<double, 4>{l1, l2, l3, r2 - l3};
    };
    // Each grid point is compared in both directions with its axis neighbours
    // and with its mirror image, covering near-ties and distant pairs.
    long pairs = 0, agree = 0, convertible = 0;
    auto compare = [&](const std::array<double, 4> &a, const std::array<double, 4> &b) {
        const bool got = decide_bell(BellWeights(a), BellWeights(b)).kind == VerdictKind::Convertible;
        ++pairs;
        agree += got == reference_bell(a, b);
        convertible += got;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const auto a = point(i, j, k);
                const int nb[4][3] = {{i + 1, j, k}, {i, j + 1, k}, {i, j, k + 1}, {n - 1 - i, n - 1 - j, n - 1 - k}};
                for (const auto &c : nb) {
                    if (c[0] >= n || c[1] >= n || c[2] >= n) continue;
                    const auto b = point(c[0], c[1], c[2]);
                    compare(a, b);
                    compare(b, a);
                }
            }
    const double dt = seconds_since(t0);
    const bool pass = examples && agree == pairs && convertible > 0 && convertible < pairs && dt < 60.0;
    return {pass, std::string("examples ") + (examples ? "ok" : "WRONG") + ", grid " + std::to_string(agree) + "/" +
                      std::to_string(pairs) + " pairs agree (" + std::to_string(convertible) + " convertible), " +
                      g(dt) + " s"};
}

// 3. Monotone audit.
Outcome monotone_audit_run() {
    const auto r = monotone_audit(10000, 42);
    const bool pass = r.trials == 10000 && r.counterexamples.empty() && r.elapsed < 120.0;
    return {pass, std::to_string(r.trials) + " trials, " + std::to_string(r.counterexamples.size()) +
                      " counterexamples, " + g(r.elapsed) + " s"};
}

// Forward map of "keep with weight W, otherwise prepare" on MEMS weights,
// written out independently of the synthesis routine.
std::array<double, 4> mems_forward(const std::array<double, 4> &l, double W, double p01, double p0011, double p10) {
    const double l3 = W * l[2] + (1.0 - W) * p0011 / 2.0;
    return {l3 + W * (l[0] - l[2]), W * l[1] + (1.0 - W) * p01, l3, W * l[3] + (1.0 - W) * p10};
}

// 4. MEMS synthesis round trips.
Outcome mems_synthesis() {
    struct Case {
        std::array<double, 4> from, to;
        double W, p01, p0011, p10;
    };
    const Case cases[] = {
        {{0.6, 0.25, 0.15, 0}, {0.54, 0.325, 0.135, 0}, 0.9, 1.0, 0.0, 0.0},
        {{0.5, 0.2, 0.2, 0.1}, {0.44, 0.24, 0.2, 0.12}, 0.8, 0.4, 0.4, 0.2},
    };
    double worst_residual = 0.0, worst_param = 0.0;
    for (const auto &c : cases) {
        const auto p = synthesize_mems_protocol(MemsWeights(c.from), MemsWeights(c.to));
        worst_residual = std::max(
            worst_residual, verify_protocol(p.protocol(), make_mems(MemsWeights(c.from)), make_mems(MemsWeights(c.to))));
        worst_param = std::max({worst_param, std::abs(p.W - c.W), std::abs(p.p01 - c.p01),
                                std::abs(p.p00_11 - c.p0011), std::abs(p.p10 - c.p10)});
    }
    const bool examples = worst_residual < 1e-10 && worst_param < 1e-12;

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::gamma_distribution<double> gam(1.0, 1.0);
    int done = 0, attempts = 0;
    double worst = 0.0;
    while (done < 1000 && attempts < 1000000) {
        ++attempts;
        std::array<double, 4> l;
        double s = 0;
        for (auto &x : l) s += (x = gam(rng));
        for (auto &x : l) x /= s;
        std::sort(l.begin(), l.end(), std::greater<>());
        if (l[0] - l[2] < 0.05) continue;
        const double W = 0.05 + 0.9 * u(rng);
        double q[3], qs = 0;
        for (auto &x : q) qs += (x = gam(rng));
        for (auto &x : q) x /= qs;
        const auto to = mems_forward(l, W, q[0], q[1], q[2]);
        if (!(to[0] >= to[1] && to[1] >= to[2] && to[2] >= to[3])) continue;
        const auto p = synthesize_mems_protocol(MemsWeights(l), MemsWeights(to));
        worst = std::max({worst, std::abs(p.W - W), std::abs(p.p01 - q[0]), std::abs(p.p00_11 - q[1]),
                          std::abs(p.p10 - q[2])});
        ++done;
    }
    const bool pass = examples && done == 1000 && worst <= 1e-8;
    return {pass, "examples residual " + g(worst_residual) + ", sweep " + std::to_string(done) +
                      " samples, max parameter error " + g(worst)};
}

// 5. Werner protocols.
Outcome werner_protocols() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int forbidden = 0, reversed = 0, bad = 0;
    for (int t = 0; t < 100; ++t) {
        double w = u(rng), w2 = u(rng);
        if (w < w2) std::swap(w, w2);
        if (t == 0) w2 = w;  // the boundary w = w'
        const auto v = decide_werner(WernerParam(w), WernerParam(w2));
        if (v.kind != VerdictKind::Convertible || !v.protocol) {
            ++bad;
            continue;
        }
        worst = std::max(worst, verify_protocol(*v.protocol, make_werner(WernerParam(w)), make_werner(WernerParam(w2))));
        if (w2 < w) {
            ++reversed;
            forbidden += decide_werner(WernerParam(w2), WernerParam(w)).kind == VerdictKind::Forbidden;
        }
    }
    const bool pass = bad == 0 && worst < 1e-12 && forbidden == reversed;
    return {pass, "100 pairs, max residual " + g(worst) + ", reversed " + std::to_string(forbidden) + "/" +
                      std::to_string(reversed) + " Forbidden"};
}

// 6. Rank falsifier.
Outcome rank_falsifier() {
    const auto r = falsify_rank_monotonicity(100000, 42);
    const bool pass = r.trials == 100000 && r.counterexamples.empty() && r.elapsed < 300.0;
    return {pass, std::to_string(r.trials) + " trials, " + std::to_string(r.counterexamples.size()) +
                      " counterexamples, " + g(r.elapsed) + " s"};
}

// 7. Concurrence on a MEMS line and witness agreement.
Outcome measures_cross_validation() {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double l1 = 0.5 + 0.5 * k / 49.0;
        worst = std::max(worst, std::abs(concurrence(make_mems(MemsWeights({l1, 1.0 - l1, 0, 0}))) - l1));
    }
    Rng rng(7);
    int used = 0, disagreements = 0, entangled = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto rho = random_density(rng, 1 + t % 4);
        if (std::abs(partial_transpose_spectrum(rho)[3]) < 1e-8) continue;  // boundary band
        ++used;
        const bool ppt = is_entangled(rho);
        entangled += ppt;
        if ((concurrence(rho) > 1e-8) != ppt || (negativity(rho) > 1e-8) != ppt) ++disagreements;
    }
    const bool pass = worst <= 1e-10 && disagreements == 0 && entangled > 0 && entangled < used;
    return {pass, "concurrence max error " + g(worst) + " on 50 points; witnesses " + std::to_string(disagreements) +
                      " disagreements on " + std::to_string(used) + " states (" + std::to_string(entangled) +
                      " entangled)"};
}

// 8. Eigensolver and partial transpose.
Outcome kernel() {
    std::mt19937_64 rng(8);
    double worst_eig = 0.0, worst_pt = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const CMat4 m = testutil::random_hermitian(rng);
        const auto e = hermitian_eig(m);
        CMat4 rebuilt;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                cplx s = 0;
                for (std::size_t k = 0; k < 4; ++k) s += e.vectors(r, k) * e.values[k] * std::conj(e.vectors(c, k));
                rebuilt(r, c) = s;
            }
        worst_eig = std::max(worst_eig, frobenius_distance(rebuilt, m));
        for (auto sub : {Subsystem::A, Subsystem::B})
            worst_pt = std::max(worst_pt, frobenius_distance(partial_transpose(partial_transpose(m, sub), sub), m));
    }
    const bool pass = worst_eig < 1e-10 && worst_pt <= 1e-14;
    return {pass, "10000 matrices, reconstruction " + g(worst_eig) + ", involution " + g(worst_pt)};
}

struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> all = {
        {1, "renormalized probabilistic protocol", renormalization},
        {2, "Bell-diagonal decisions", bell_decisions},
        {3, "monotone audit", monotone_audit_run},
        {4, "MEMS synthesis round trips", mems_synthesis},
        {5, "Werner protocols", werner_protocols},
        {6, "rank falsifier", rank_falsifier},
        {7, "measures cross-validation", measures_cross_validation},
        {8, "eigensolver and partial transpose", kernel},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto &c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s  %d  %-38s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
