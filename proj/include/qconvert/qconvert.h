/* Copyright 2026 The qconvert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the convertibility engine.
 *
 * Every fallible call returns a qc_status; on failure the message for the
 * calling thread is available from qc_last_error() until the next call.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function (NULL is accepted). Matrices are row-major 4x4
 * (16 doubles) or 2x2 (4 doubles), split into real and imaginary arrays.
 */

#ifndef QCONVERT_H
#define QCONVERT_H

#include <stddef.h>
#include <stdint.h>

#if defined(QCONVERT_BUILDING_LIBRARY)
#define QC_API __attribute__((visibility("default")))
#else
#define QC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qc_status {
    QC_OK = 0,
    QC_INVALID_ARGUMENT = 1,
    QC_OUT_OF_RANGE = 2,
    QC_NOT_HERMITIAN = 3,
    QC_NOT_UNITARY = 4,
    QC_NOT_SEPARABLE = 5,
    QC_NOT_PRODUCT_DIAGONAL = 6,
    QC_NOT_TRACE_PRESERVING = 7,
    QC_BAD_WEIGHTS = 8,
    QC_NOT_ENTANGLED = 9,
    QC_INFEASIBLE = 10,
    QC_SAMPLING_EXHAUSTED = 11,
    QC_INTERNAL = 12
} qc_status;

typedef struct qc_state qc_state;
typedef struct qc_protocol qc_protocol;
typedef struct qc_verdict qc_verdict;

QC_API const char *qc_version(void);
QC_API const char *qc_status_name(qc_status status);
QC_API const char *qc_last_error(void);

/* ---- states ---------------------------------------------------------- */

QC_API qc_status qc_state_werner(double w, qc_state **out);
/* Bell-basis weights in the order singlet, Phi+, Phi-, Psi+; non-ascending. */
QC_API qc_status qc_state_bell_diagonal(const double lambda[4], qc_state **out);
QC_API qc_status qc_state_mems(const double lambda[4], qc_state **out);
QC_API qc_status qc_state_dense(const double re[16], const double im[16], qc_state **out);
QC_API qc_status qc_state_clone(const qc_state *s, qc_state **out);
QC_API void qc_state_free(qc_state *s);

QC_API qc_status qc_state_matrix(const qc_state *s, double re[16], double im[16]);
/* Non-ascending. */
QC_API qc_status qc_state_eigenvalues(const qc_state *s, double out[4]);
/* Frobenius distance. */
QC_API qc_status qc_state_distance(const qc_state *a, const qc_state *b, double *out);

typedef enum qc_family { QC_FAMILY_WERNER = 0, QC_FAMILY_BELL_DIAGONAL = 1, QC_FAMILY_MEMS = 2, QC_FAMILY_GENERAL = 3 } qc_family;

typedef struct qc_measures {
    double concurrence;
    double eof;
    double negativity;
    double purity;
    double entropy; /* bits */
    int rank;
    int entangled;
    qc_family family;
    /* w for Werner, lambda[4] for Bell-diagonal and MEMS. */
    int n_family_params;
    double family_params[4];
    /* Set for Werner and Bell-diagonal states; +inf encodes a zero denominator. */
    int has_monotones;
    double monotones[3];
} qc_measures;

QC_API const char *qc_family_name(qc_family family);
/* rank_tol <= 0 selects the default 1e-9. */
QC_API qc_status qc_measure(const qc_state *s, double rank_tol, qc_measures *out);

/* ---- protocols ------------------------------------------------------- */

typedef enum qc_atom_type { QC_ATOM_LOCAL_UNITARY = 0, QC_ATOM_DISCARD_PREPARE = 1 } qc_atom_type;

typedef struct qc_atom {
    qc_atom_type type;
    double weight;
    double ua_re[4], ua_im[4];
    double ub_re[4], ub_im[4];
    double target_re[16], target_im[16];
} qc_atom;

/* An empty builder; weights and atoms are validated by apply/verify. */
QC_API qc_status qc_protocol_new(qc_protocol **out);
QC_API void qc_protocol_free(qc_protocol *p);
QC_API qc_status qc_protocol_add_unitary(qc_protocol *p, double weight, const double ua_re[4],
                                         const double ua_im[4], const double ub_re[4], const double ub_im[4]);
QC_API qc_status qc_protocol_add_prepare(qc_protocol *p, double weight, const qc_state *target);
QC_API size_t qc_protocol_size(const qc_protocol *p);
QC_API qc_status qc_protocol_atom(const qc_protocol *p, size_t index, qc_atom *out);
/* Checks the mixture (weights sum to 1, unitarity, separable targets). */
QC_API qc_status qc_protocol_validate(const qc_protocol *p);
QC_API qc_status qc_protocol_apply(const qc_protocol *p, const qc_state *rho, qc_state **out);
QC_API qc_status qc_protocol_verify(const qc_protocol *p, const qc_state *from, const qc_state *to,
                                    double *residual);

/* ---- decisions ------------------------------------------------------- */

typedef enum qc_verdict_kind { QC_CONVERTIBLE = 0, QC_FORBIDDEN = 1, QC_INCONCLUSIVE = 2 } qc_verdict_kind;

/* Tolerances <= 0 select the defaults (rank 1e-9, family 1e-8). */
QC_API qc_status qc_decide(const qc_state *from, const qc_state *to, double rank_tol, double family_tol,
                           qc_verdict **out);
QC_API void qc_verdict_free(qc_verdict *v);
QC_API qc_verdict_kind qc_verdict_get_kind(const qc_verdict *v);
QC_API const char *qc_verdict_kind_name(qc_verdict_kind kind);
/* e.g. "RankGate", "MonotoneE(2)"; NULL when the verdict has no reason. */
QC_API const char *qc_verdict_reason(const qc_verdict *v);
QC_API const char *qc_verdict_certificate(const qc_verdict *v);
/* Returns 1 and writes the verification residual when a protocol is attached. */
QC_API int qc_verdict_residual(const qc_verdict *v, double *out);
/* Borrowed pointer valid while the verdict lives; NULL without a protocol. */
QC_API const qc_protocol *qc_verdict_protocol(const qc_verdict *v);

typedef struct qc_synthesis {
    qc_family family; /* QC_FAMILY_WERNER or QC_FAMILY_MEMS */
    double W;         /* identity weight */
    /* Prepared state: p01 |01><01| + (p00_11 / 2)(|00><00| + |11><11|) + p10 |10><10|
       for MEMS; I/4 for Werner (p01 = p00_11 = p10 = 0). */
    double p01;
    double p00_11;
    double p10;
} qc_synthesis;

/* QC_INFEASIBLE (detail in qc_last_error) when the construction does not
   apply; QC_INVALID_ARGUMENT when the pair shares neither family. `protocol`
   may be NULL. */
QC_API qc_status qc_synthesize(const qc_state *from, const qc_state *to, double family_tol, qc_synthesis *out,
                               qc_protocol **protocol);

/* ---- randomized checks ----------------------------------------------- */

typedef struct qc_search_result {
    double best_distance;
    int evaluations;
    int found; /* best_distance < 1e-6 and a protocol is available */
} qc_search_result;

QC_API qc_status qc_search(const qc_state *from, const qc_state *to, int budget, uint64_t seed,
                           qc_search_result *out, qc_protocol **protocol);

typedef struct qc_finding {
    uint64_t trial;
    uint64_t seed;
    char kind[64];
} qc_finding;

typedef struct qc_audit_report {
    uint64_t trials;
    uint64_t rank_findings;
    uint64_t monotone_findings;
    double rank_elapsed;     /* seconds */
    double monotone_elapsed; /* seconds */
    /* First finding of either harness, valid when the counts are not both zero. */
    qc_finding first;
} qc_audit_report;

QC_API qc_status qc_audit(uint64_t trials, uint64_t seed, qc_audit_report *out);

#ifdef __cplusplus
}
#endif

#endif
