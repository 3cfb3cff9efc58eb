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

#include "qconvert/oracle.hpp"

#include <algorithm>
#include <chrono>

#include "qconvert/nelder_mead.hpp"

namespace qconvert {

namespace {

constexpr std::size_t kSampleLog = 8;
constexpr int kMaxRejections = 1000;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cplx gaussian(Rng &rng) {
    std::normal_distribution<double> g;
    return {g(rng), g(rng)};
}

double uniform(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <std::size_t N>
CMat<N> random_unitary(Rng &rng) {
    CMat<N> u;
    for (auto &x : u.a) x = gaussian(rng);
    // Gram-Schmidt on columns; positive diagonal of R makes the result Haar.
    for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            cplx proj = 0.0;
            for (std::size_t r = 0; r < N; ++r) proj += std::conj(u(r, p)) * u(r, c);
            for (std::size_t r = 0; r < N; ++r) u(r, c) -= proj * u(r, p);
        }
        double n = 0.0;
        for (std::size_t r = 0; r < N; ++r) n += std::norm(u(r, c));
        n = std::sqrt(n);
        for (std::size_t r = 0; r < N; ++r) u(r, c) /= n;
    }
    return u;
}

CMat2 random_factor(Rng &rng) {
    CMat2 m;
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        const CVec2 u = {gaussian(rng), gaussian(rng)};
        const CVec2 v = {gaussian(rng), gaussian(rng)};
        return CMat2::outer(u, v);
    }
    for (auto &x : m.a) x = gaussian(rng);
    return m;
}

std::vector<double> dirichlet(Rng &rng, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(n);
    double s = 0.0;
    for (auto &x : w) s += (x = e(rng));
    for (auto &x : w) x /= s;
    return w;
}

std::array<double, 4> sorted_desc(std::array<double, 4> l) {
    std::sort(l.begin(), l.end(), std::greater<>());
    return l;
}

// Random separable state: mixture of up to four random pure product states.
DensityMatrix random_product_mixture(Rng &rng) {
    const std::size_t n = 1 + static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 3)(rng));
    const std::vector<double> p = dirichlet(rng, n);
    CMat4 m;
    for (std::size_t k = 0; k < n; ++k) {
        const CMat2 ua = random_unitary<2>(rng), ub = random_unitary<2>(rng);
        const CVec4 ab = kron2(CVec2{ua(0, 0), ua(1, 0)}, CVec2{ub(0, 0), ub(1, 0)});
        m += CMat4::outer(ab, ab) * p[k];
    }
    return DensityMatrix(m);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

DensityMatrix random_density(Rng &rng, int rank) {
    if (rank < 1 || rank > 4) throw Error(ErrorCode::InvalidArgument, "rank must be 1..4");
    CMat4 m;
    for (int k = 0; k < rank; ++k) {
        CVec4 g;
        for (auto &x : g) x = gaussian(rng);
        m += CMat4::outer(g, g);
    }
    m *= 1.0 / m.trace().real();
    return DensityMatrix((m + m.adjoint()) * cplx(0.5));
}

DensityMatrix random_entangled_density(Rng &rng, int rank, double min_negativity) {
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        DensityMatrix rho = random_density(rng, rank);
        double neg = 0.0;
        for (double x : partial_transpose_spectrum(rho))
            if (x < 0.0) neg -= x;
        if (neg > min_negativity) return rho;
    }
    throw Error(ErrorCode::SamplingExhausted, "no entangled sample found");
}

CMat2 random_unitary2(Rng &rng) { return random_unitary<2>(rng); }
CMat4 random_unitary4(Rng &rng) { return random_unitary<4>(rng); }

SeparableChannel random_separable_channel(std::uint64_t seed, int n_kraus) {
    if (n_kraus < 1) throw Error(ErrorCode::InvalidArgument, "n_kraus must be at least 1");
    Rng rng(seed);
    if (n_kraus == 1) return SeparableChannel({{random_unitary2(rng), random_unitary2(rng)}}, false);

    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        std::vector<LocalKrausPair> kraus;
        CMat4 sum;
        for (int i = 0; i < n_kraus; ++i) {
            LocalKrausPair k{random_factor(rng), random_factor(rng)};
            sum += kron2(k.a.adjoint() * k.a, k.b.adjoint() * k.b);
            kraus.push_back(k);
        }
        const double top = hermitian_eig(sum).values[0];
        if (!(top > 0.0)) continue;
        const double scale = uniform(rng, 0.3, 0.95) / top;
        for (auto &k : kraus) k.a *= std::sqrt(scale);

        const CMat4 rest = CMat4::identity() - sum * scale;
        const double rest_trace = rest.trace().real();
        const DensityMatrix normalized(rest * (1.0 / rest_trace));
        if (is_entangled(normalized)) continue;
        const auto terms = separable_decomposition(normalized, 1e-11);
        if (!terms) continue;
        for (const auto &t : *terms) {
            const double amp = std::sqrt(t.p * rest_trace);
            kraus.push_back({CMat2::outer(t.a, t.a) * amp, CMat2::outer(t.b, t.b)});
        }
        if (completeness_residual(kraus) > kCompletenessTolerance) continue;
        return SeparableChannel(std::move(kraus), false);
    }
    throw Error(ErrorCode::SamplingExhausted, "could not complete a random separable channel");
}

SearchReport falsify_rank_monotonicity(std::uint64_t trials, std::uint64_t seed, ChannelSource source) {
    const auto t0 = std::chrono::steady_clock::now();
    SearchReport report;
    report.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);
        const int rank = 3 + static_cast<int>(t % 2);
        const DensityMatrix rho = random_entangled_density(rng, rank);

        CMat4 out;
        if (source == ChannelSource::Separable) {
            const int n = 1 + std::uniform_int_distribution<int>(0, 3)(rng);
            out = apply_raw(random_separable_channel(derive_seed(ts, 1), n), rho.matrix());
        } else {
            const CMat4 u = random_unitary4(rng);
            out = u * rho.matrix() * u.adjoint();
        }
        const DensityMatrix sigma(out);

        const double neg = negativity(sigma);
        const auto e = sigma.eigenvalues();
        const int rank_in = numeric_rank(rho.eigenvalues(), kRankGapHigh);
        const int rank_out = numeric_rank(e, kRankGapHigh);
        bool gap = false;
        for (std::size_t k = 1; k < 4; ++k)
            if (e[k] < kRankGapLow && e[k - 1] > kRankGapHigh) gap = true;

        std::vector<double> diag = {static_cast<double>(rank_in), static_cast<double>(rank_out), neg,
                                    e[0], e[1], e[2], e[3]};
        if (neg > kCounterexampleNegativity && gap && rank_out < rank_in)
            report.counterexamples.push_back({t, ts, "entangled output of lower rank", diag});
        if (report.samples.size() < kSampleLog) report.samples.push_back({t, ts, "sample", std::move(diag)});
    }
    report.elapsed = seconds_since(t0);
    return report;
}

SearchReport monotone_audit(std::uint64_t trials, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto &catalog = bell_extremal_catalog();
    SearchReport report;
    report.trials = trials;

    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);

        // Bell-diagonal part: catalog mixtures must not raise E1..E3.
        std::array<double, 4> lambda{};
        do {
            const auto d = dirichlet(rng, 4);
            std::copy(d.begin(), d.end(), lambda.begin());
        } while (*std::max_element(lambda.begin(), lambda.end()) <= 0.5 + 1e-3);
        CMat4 m;
        for (std::size_t i = 0; i < 4; ++i) m += bell_projector(kBellOrder[i]) * lambda[i];
        const DensityMatrix rho(m);

        const std::size_t picks = 1 + static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 3)(rng));
        const std::vector<double> w = dirichlet(rng, picks);
        std::vector<WeightedChannel> parts;
        std::uniform_int_distribution<std::size_t> pick(0, catalog.size() - 1);
        for (std::size_t k = 0; k < picks; ++k) parts.push_back({w[k], catalog[pick(rng)].channel});
        const DensityMatrix out = apply(mix(parts), rho);

        const auto fitted = fit_bell(out, 1e-9);
        if (!fitted) {
            report.counterexamples.push_back({t, ts, "catalog mixture left the Bell-diagonal family", {}});
        } else {
            const BellWeights in_w(sorted_desc(lambda));
            const MonotoneTriple e_in = bell_monotones(in_w);
            const MonotoneTriple e_out = bell_monotones(*fitted);
            std::vector<double> diag;
            for (double x : in_w.lambda()) diag.push_back(x);
            for (double x : fitted->lambda()) diag.push_back(x);
            for (int k = 0; k < 3; ++k) diag.push_back(e_in[k]);
            for (int k = 0; k < 3; ++k) diag.push_back(e_out[k]);

            if (negativity(out) > kAuditTolerance) {
                for (int k = 0; k < 3; ++k) {
                    const double slack = kAuditTolerance * std::max(1.0, std::abs(e_in[k]));
                    const bool raised = e_in[k] != kInfinity &&
                                        (e_out[k] == kInfinity || e_in[k] < e_out[k] - slack);
                    if (raised) {
                        report.counterexamples.push_back(
                            {t, ts, "E" + std::to_string(k + 1) + " increased", diag});
                        break;
                    }
                }
            }
            if (report.samples.size() < kSampleLog) report.samples.push_back({t, ts, "sample", std::move(diag)});
        }

        // Concurrence part: certified LOCC mixtures on random states.
        const DensityMatrix state = random_density(rng, 4);
        const std::size_t atoms = 1 + static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 2)(rng));
        const std::vector<double> aw = dirichlet(rng, atoms);
        std::vector<WeightedChannel> locc;
        for (std::size_t k = 0; k < atoms; ++k) {
            if (std::uniform_int_distribution<int>(0, 1)(rng) == 0)
                locc.push_back({aw[k], local_unitary_channel(random_unitary2(rng), random_unitary2(rng))});
            else
                locc.push_back({aw[k], discard_prepare_channel(random_product_mixture(rng))});
        }
        const SeparableChannel ch = mix(locc);
        const double c_in = concurrence(state);
        const double c_out = concurrence(apply(ch, state));
        if (!ch.locc_certified() || c_out > c_in + kAuditTolerance)
            report.counterexamples.push_back({t, ts, "concurrence increased", {c_in, c_out}});
    }
    report.elapsed = seconds_since(t0);
    return report;
}

namespace {

constexpr std::size_t kAtomParams = 8;  // 7 catalog unitaries + 1 prepare
constexpr std::size_t kPrepParams = 4;

struct SearchModel {
    std::vector<LocalUnitary> unitaries;
    std::vector<CMat4> images;  // U rho U^H per unitary
    CMat4 target;

    static void split(std::span<const double> x, std::array<double, kAtomParams> &w,
                      std::array<double, kPrepParams> &q) {
        double sw = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < kAtomParams; ++i) sw += (w[i] = x[i] * x[i]);
        for (std::size_t i = 0; i < kPrepParams; ++i) sq += (q[i] = x[kAtomParams + i] * x[kAtomParams + i]);
        for (auto &v : w) v = sw > 0.0 ? v / sw : 0.0;
        for (auto &v : q) v = sq > 0.0 ? v / sq : 0.25;
    }

    double objective(std::span<const double> x) const {
        std::array<double, kAtomParams> w;
        std::array<double, kPrepParams> q;
        split(x, w, q);
        if (w[0] + w[1] + w[2] + w[3] + w[4] + w[5] + w[6] + w[7] == 0.0) return 1e9;
        CMat4 out;
        for (std::size_t k = 0; k + 1 < kAtomParams; ++k)
            if (w[k] != 0.0) out += images[k] * w[k];
        for (std::size_t i = 0; i < kPrepParams; ++i) out(i, i) += w[kAtomParams - 1] * q[i];
        const double d = frobenius_distance(out, target);
        return d * d;
    }

    Protocol protocol(std::span<const double> x) const {
        std::array<double, kAtomParams> w;
        std::array<double, kPrepParams> q;
        split(x, w, q);
        double kept = 0.0;
        for (double v : w)
            if (v > 1e-15) kept += v;
        std::vector<WeightedAtom> atoms;
        for (std::size_t k = 0; k + 1 < kAtomParams; ++k)
            if (w[k] > 1e-15) atoms.push_back({w[k] / kept, unitaries[k]});
        if (w[kAtomParams - 1] > 1e-15) {
            CMat4 sigma;
            for (std::size_t i = 0; i < kPrepParams; ++i) sigma(i, i) = q[i];
            atoms.push_back({w[kAtomParams - 1] / kept, DiscardPrepare{DensityMatrix(sigma)}});
        }
        return Protocol(std::move(atoms));
    }
};

}  // namespace

ConvertSearchResult convert_search(const DensityMatrix &from, const DensityMatrix &to, int budget,
                                   std::uint64_t seed, int restarts) {
    if (budget < 1 || restarts < 1) throw Error(ErrorCode::InvalidArgument, "budget and restarts must be positive");
    SearchModel model;
    model.target = to.matrix();
    for (const auto &entry : bell_extremal_catalog()) {
        if (const auto *u = std::get_if<LocalUnitary>(&entry.atom)) {
            model.unitaries.push_back(*u);
            const CMat4 op = kron2(u->ua, u->ub);
            model.images.push_back(op * from.matrix() * op.adjoint());
        }
    }
    if (model.unitaries.size() + 1 != kAtomParams) throw Error(ErrorCode::Internal, "unexpected catalog size");

    const auto objective = [&model](std::span<const double> x) { return model.objective(x); };
    const int per_restart = std::max(1, budget / restarts);

    std::vector<double> best_x(kAtomParams + kPrepParams, 0.0);
    best_x[0] = 1.0;  // identity unitary
    for (std::size_t i = 0; i < kPrepParams; ++i) best_x[kAtomParams + i] = 1.0;
    double best_f = objective(best_x);
    int evaluations = 1;

    Rng rng(seed);
    for (int r = 0; r < restarts && evaluations < budget; ++r) {
        std::vector<double> x0 = best_x;
        NelderMeadOptions opts;
        opts.max_evaluations = std::min(per_restart, budget - evaluations);
        opts.f_target = 1e-20;
        if (r % 2 == 1) {
            for (auto &v : x0) v = uniform(rng, 0.0, 1.0);
            opts.step = 0.25;
        } else {
            opts.step = 0.25 / (1.0 + r);
        }
        const NelderMeadResult res = nelder_mead(objective, x0, opts);
        evaluations += res.evaluations;
        if (res.f < best_f) {
            best_f = res.f;
            best_x = res.x;
        }
        if (best_f <= opts.f_target) break;
    }

    ConvertSearchResult result{std::sqrt(best_f), std::nullopt, evaluations};
    if (result.best_distance < kSearchSuccess) {
        Protocol p = model.protocol(best_x);
        result.best_distance = verify_protocol(p, from, to);
        if (result.best_distance < kSearchSuccess) result.protocol = std::move(p);
    }
    return result;
}

}  // namespace qconvert
