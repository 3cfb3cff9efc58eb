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

#include "qconvert/qconvert.h"

#include <cstring>
#include <new>
#include <string>

#include "qconvert/convertibility.hpp"
#include "qconvert/oracle.hpp"

using namespace qconvert;

struct qc_state {
    DensityMatrix rho;
};

struct qc_protocol {
    std::vector<WeightedAtom> atoms;
};

struct qc_verdict {
    Verdict verdict;
    std::string reason;
    std::optional<qc_protocol> protocol;
};

namespace {

thread_local std::string last_error;

static_assert(static_cast<int>(ErrorCode::InvalidArgument) == QC_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::Internal) == QC_INTERNAL);

qc_status fail(qc_status s, std::string msg) {
    last_error = std::move(msg);
    return s;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
qc_status guarded(Fn &&fn) {
    try {
        last_error.clear();
        fn();
        return QC_OK;
    } catch (const Error &e) {
        return fail(static_cast<qc_status>(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(QC_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(QC_INTERNAL, e.what());
    }
}

void require(bool ok, const char *what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

CMat4 read4(const double *re, const double *im) {
    CMat4 m;
    for (std::size_t i = 0; i < 16; ++i) m.a[i] = cplx(re[i], im ? im[i] : 0.0);
    return m;
}

CMat2 read2(const double *re, const double *im) {
    CMat2 m;
    for (std::size_t i = 0; i < 4; ++i) m.a[i] = cplx(re[i], im ? im[i] : 0.0);
    return m;
}

template <std::size_t N>
void write(const CMat<N> &m, double *re, double *im) {
    for (std::size_t i = 0; i < N * N; ++i) {
        re[i] = m.a[i].real();
        im[i] = m.a[i].imag();
    }
}

qc_state *wrap(DensityMatrix rho) { return new qc_state{std::move(rho)}; }

std::array<double, 4> read_lambda(const double *l) { return {l[0], l[1], l[2], l[3]}; }

}  // namespace

extern "C" {

const char *qc_version(void) { return "0.1.0"; }

const char *qc_status_name(qc_status status) {
    if (status == QC_OK) return "Ok";
    if (status < QC_INVALID_ARGUMENT || status > QC_INTERNAL) return "Unknown";
    return error_code_name(static_cast<ErrorCode>(status));
}

const char *qc_last_error(void) { return last_error.c_str(); }

qc_status qc_state_werner(double w, qc_state **out) {
    return guarded([&] {
        require(out, "out is NULL");
        *out = wrap(make_werner(WernerParam(w)));
    });
}

qc_status qc_state_bell_diagonal(const double lambda[4], qc_state **out) {
    return guarded([&] {
        require(lambda && out, "NULL argument");
        *out = wrap(make_bell_diagonal(BellWeights(read_lambda(lambda))));
    });
}

qc_status qc_state_mems(const double lambda[4], qc_state **out) {
    return guarded([&] {
        require(lambda && out, "NULL argument");
        *out = wrap(make_mems(MemsWeights(read_lambda(lambda))));
    });
}

qc_status qc_state_dense(const double re[16], const double im[16], qc_state **out) {
    return guarded([&] {
        require(re && out, "NULL argument");
        const CMat4 m = read4(re, im);
        require(m.is_finite(), "matrix has non-finite entries");
        *out = wrap(DensityMatrix(m));
    });
}

qc_status qc_state_clone(const qc_state *s, qc_state **out) {
    return guarded([&] {
        require(s && out, "NULL argument");
        *out = new qc_state(*s);
    });
}

void qc_state_free(qc_state *s) { delete s; }

qc_status qc_state_matrix(const qc_state *s, double re[16], double im[16]) {
    return guarded([&] {
        require(s && re && im, "NULL argument");
        write(s->rho.matrix(), re, im);
    });
}

qc_status qc_state_eigenvalues(const qc_state *s, double out[4]) {
    return guarded([&] {
        require(s && out, "NULL argument");
        for (std::size_t k = 0; k < 4; ++k) out[k] = s->rho.eigenvalues()[k];
    });
}

qc_status qc_state_distance(const qc_state *a, const qc_state *b, double *out) {
    return guarded([&] {
        require(a && b && out, "NULL argument");
        *out = a->rho.distance(b->rho);
    });
}

const char *qc_family_name(qc_family family) {
    switch (family) {
        case QC_FAMILY_WERNER: return "werner";
        case QC_FAMILY_BELL_DIAGONAL: return "bell_diagonal";
        case QC_FAMILY_MEMS: return "mems";
        case QC_FAMILY_GENERAL: return "general";
    }
    return "unknown";
}

qc_status qc_measure(const qc_state *s, double rank_tol, qc_measures *out) {
    return guarded([&] {
        require(s && out, "NULL argument");
        const DensityMatrix &rho = s->rho;
        const double tol = rank_tol > 0 ? rank_tol : kDefaultRankTolerance;
        const StateScalars sc = state_scalars(rho, tol);
        qc_measures m{};
        m.concurrence = concurrence(rho);
        m.eof = eof_from_concurrence(m.concurrence);
        m.negativity = negativity(rho);
        m.purity = sc.purity;
        m.entropy = sc.entropy;
        m.rank = sc.rank;
        m.entangled = is_entangled(rho) ? 1 : 0;

        const FamilyTag tag = classify_family(rho);
        auto set_lambda = [&](const std::array<double, 4> &l) {
            m.n_family_params = 4;
            for (std::size_t k = 0; k < 4; ++k) m.family_params[k] = l[k];
        };
        if (const auto *w = std::get_if<WernerParam>(&tag)) {
            m.family = QC_FAMILY_WERNER;
            m.n_family_params = 1;
            m.family_params[0] = w->w();
        } else if (const auto *b = std::get_if<BellWeights>(&tag)) {
            m.family = QC_FAMILY_BELL_DIAGONAL;
            set_lambda(b->lambda());
        } else if (const auto *x = std::get_if<MemsWeights>(&tag)) {
            m.family = QC_FAMILY_MEMS;
            set_lambda(x->lambda());
        } else {
            m.family = QC_FAMILY_GENERAL;
        }
        // Werner states are Bell-diagonal too; both report the monotone triple.
        if (m.family == QC_FAMILY_WERNER || m.family == QC_FAMILY_BELL_DIAGONAL) {
            if (const auto b = fit_bell(rho)) {
                const MonotoneTriple e = bell_monotones(*b);
                m.has_monotones = 1;
                m.monotones[0] = e.e1;
                m.monotones[1] = e.e2;
                m.monotones[2] = e.e3;
            }
        }
        *out = m;
    });
}

qc_status qc_protocol_new(qc_protocol **out) {
    return guarded([&] {
        require(out, "out is NULL");
        *out = new qc_protocol{};
    });
}

void qc_protocol_free(qc_protocol *p) { delete p; }

qc_status qc_protocol_add_unitary(qc_protocol *p, double weight, const double ua_re[4], const double ua_im[4],
                                  const double ub_re[4], const double ub_im[4]) {
    return guarded([&] {
        require(p && ua_re && ub_re, "NULL argument");
        const CMat2 ua = read2(ua_re, ua_im), ub = read2(ub_re, ub_im);
        if (!is_unitary(ua) || !is_unitary(ub))
            throw Error(ErrorCode::NotUnitary, "local operator is not unitary within 1e-10");
        p->atoms.push_back({weight, LocalUnitary{ua, ub}});
    });
}

qc_status qc_protocol_add_prepare(qc_protocol *p, double weight, const qc_state *target) {
    return guarded([&] {
        require(p && target, "NULL argument");
        if (is_entangled(target->rho)) throw Error(ErrorCode::NotSeparable, "prepared state is entangled");
        p->atoms.push_back({weight, DiscardPrepare{target->rho}});
    });
}

size_t qc_protocol_size(const qc_protocol *p) { return p ? p->atoms.size() : 0; }

qc_status qc_protocol_atom(const qc_protocol *p, size_t index, qc_atom *out) {
    return guarded([&] {
        require(p && out, "NULL argument");
        if (index >= p->atoms.size()) throw Error(ErrorCode::OutOfRange, "atom index out of range");
        const WeightedAtom &wa = p->atoms[index];
        qc_atom a{};
        a.weight = wa.weight;
        if (const auto *u = std::get_if<LocalUnitary>(&wa.atom)) {
            a.type = QC_ATOM_LOCAL_UNITARY;
            write(u->ua, a.ua_re, a.ua_im);
            write(u->ub, a.ub_re, a.ub_im);
        } else {
            a.type = QC_ATOM_DISCARD_PREPARE;
            write(std::get<DiscardPrepare>(wa.atom).target.matrix(), a.target_re, a.target_im);
        }
        *out = a;
    });
}

qc_status qc_protocol_validate(const qc_protocol *p) {
    return guarded([&] {
        require(p, "NULL argument");
        (void)Protocol(p->atoms);
    });
}

qc_status qc_protocol_apply(const qc_protocol *p, const qc_state *rho, qc_state **out) {
    return guarded([&] {
        require(p && rho && out, "NULL argument");
        *out = wrap(apply(compile(Protocol(p->atoms)), rho->rho));
    });
}

qc_status qc_protocol_verify(const qc_protocol *p, const qc_state *from, const qc_state *to, double *residual) {
    return guarded([&] {
        require(p && from && to && residual, "NULL argument");
        *residual = verify_protocol(Protocol(p->atoms), from->rho, to->rho);
    });
}

qc_status qc_decide(const qc_state *from, const qc_state *to, double rank_tol, double family_tol,
                    qc_verdict **out) {
    return guarded([&] {
        require(from && to && out, "NULL argument");
        DecideOptions opts;
        if (rank_tol > 0) opts.rank_tol = rank_tol;
        if (family_tol > 0) opts.family_tol = family_tol;
        auto *v = new qc_verdict{decide(from->rho, to->rho, opts), {}, std::nullopt};
        if (v->verdict.reason) v->reason = v->verdict.reason->name();
        if (v->verdict.protocol) v->protocol = qc_protocol{v->verdict.protocol->atoms()};
        *out = v;
    });
}

void qc_verdict_free(qc_verdict *v) { delete v; }

qc_verdict_kind qc_verdict_get_kind(const qc_verdict *v) {
    if (!v) return QC_INCONCLUSIVE;
    switch (v->verdict.kind) {
        case VerdictKind::Convertible: return QC_CONVERTIBLE;
        case VerdictKind::Forbidden: return QC_FORBIDDEN;
        case VerdictKind::Inconclusive: break;
    }
    return QC_INCONCLUSIVE;
}

const char *qc_verdict_kind_name(qc_verdict_kind kind) {
    switch (kind) {
        case QC_CONVERTIBLE: return verdict_name(VerdictKind::Convertible);
        case QC_FORBIDDEN: return verdict_name(VerdictKind::Forbidden);
        case QC_INCONCLUSIVE: return verdict_name(VerdictKind::Inconclusive);
    }
    return "Unknown";
}

const char *qc_verdict_reason(const qc_verdict *v) {
    return v && v->verdict.reason ? v->reason.c_str() : nullptr;
}

const char *qc_verdict_certificate(const qc_verdict *v) { return v ? v->verdict.certificate.c_str() : ""; }

int qc_verdict_residual(const qc_verdict *v, double *out) {
    if (!v || !v->verdict.residual) return 0;
    if (out) *out = *v->verdict.residual;
    return 1;
}

const qc_protocol *qc_verdict_protocol(const qc_verdict *v) {
    return v && v->protocol ? &*v->protocol : nullptr;
}

qc_status qc_synthesize(const qc_state *from, const qc_state *to, double family_tol, qc_synthesis *out,
                        qc_protocol **protocol) {
    return guarded([&] {
        require(from && to && out, "NULL argument");
        const double tol = family_tol > 0 ? family_tol : kDefaultFamilyTolerance;
        qc_synthesis s{};
        std::optional<Protocol> p;
        const auto wa = fit_werner(from->rho, tol), wb = fit_werner(to->rho, tol);
        if (wa && wb) {
            const Verdict v = decide_werner(*wa, *wb);
            if (v.kind != VerdictKind::Convertible) throw Error(ErrorCode::Infeasible, v.certificate);
            s.family = QC_FAMILY_WERNER;
            s.W = v.protocol->atoms().front().weight;
            p = v.protocol;
        } else {
            const auto ma = fit_mems(from->rho, tol), mb = fit_mems(to->rho, tol);
            if (!ma || !mb)
                throw Error(ErrorCode::InvalidArgument, "synthesis needs two Werner or two MEMS states");
            const MemsProtocolParams params = synthesize_mems_protocol(*ma, *mb);
            s.family = QC_FAMILY_MEMS;
            s.W = params.W;
            s.p01 = params.p01;
            s.p00_11 = params.p00_11;
            s.p10 = params.p10;
            p = params.protocol();
        }
        *out = s;
        if (protocol) *protocol = new qc_protocol{p->atoms()};
    });
}

qc_status qc_search(const qc_state *from, const qc_state *to, int budget, uint64_t seed, qc_search_result *out,
                    qc_protocol **protocol) {
    return guarded([&] {
        require(from && to && out, "NULL argument");
        const ConvertSearchResult r = convert_search(from->rho, to->rho, budget, seed);
        out->best_distance = r.best_distance;
        out->evaluations = r.evaluations;
        out->found = r.protocol ? 1 : 0;
        if (protocol) *protocol = r.protocol ? new qc_protocol{r.protocol->atoms()} : nullptr;
    });
}

qc_status qc_audit(uint64_t trials, uint64_t seed, qc_audit_report *out) {
    return guarded([&] {
        require(out, "NULL argument");
        const SearchReport rank = falsify_rank_monotonicity(trials, seed);
        const SearchReport mono = monotone_audit(trials, seed);
        qc_audit_report r{};
        r.trials = trials;
        r.rank_findings = rank.counterexamples.size();
        r.monotone_findings = mono.counterexamples.size();
        r.rank_elapsed = rank.elapsed;
        r.monotone_elapsed = mono.elapsed;
        const Finding *first = !rank.counterexamples.empty()   ? &rank.counterexamples.front()
                               : !mono.counterexamples.empty() ? &mono.counterexamples.front()
                                                               : nullptr;
        if (first) {
            r.first.trial = first->trial;
            r.first.seed = first->seed;
            std::strncpy(r.first.kind, first->kind.c_str(), sizeof(r.first.kind) - 1);
        }
        *out = r;
    });
}

}  // extern "C"
