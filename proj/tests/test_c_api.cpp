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

// Links only the shared library and its C header.

#include "qconvert/qconvert.h"

#include <cmath>
#include <memory>
#include <string>

#include "gtest/gtest.h"

namespace {

struct StateDel {
    void operator()(qc_state *s) const { qc_state_free(s); }
};
struct ProtocolDel {
    void operator()(qc_protocol *p) const { qc_protocol_free(p); }
};
struct VerdictDel {
    void operator()(qc_verdict *v) const { qc_verdict_free(v); }
};
using State = std::unique_ptr<qc_state, StateDel>;
using ProtocolPtr = std::unique_ptr<qc_protocol, ProtocolDel>;
using VerdictPtr = std::unique_ptr<qc_verdict, VerdictDel>;

State werner(double w) {
    qc_state *s = nullptr;
    EXPECT_EQ(qc_state_werner(w, &s), QC_OK);
    return State(s);
}

State mems(double a, double b, double c, double d) {
    const double l[4] = {a, b, c, d};
    qc_state *s = nullptr;
    EXPECT_EQ(qc_state_mems(l, &s), QC_OK) << qc_last_error();
    return State(s);
}

const double kI[4] = {1, 0, 0, 1};
const double kZero[4] = {0, 0, 0, 0};

}  // namespace

TEST(c_api, status_names_and_errors) {
    EXPECT_STREQ(qc_status_name(QC_OK), "Ok");
    EXPECT_STREQ(qc_status_name(QC_INFEASIBLE), "Infeasible");
    EXPECT_STREQ(qc_version(), "0.1.0");

    qc_state *s = nullptr;
    EXPECT_EQ(qc_state_werner(1.5, &s), QC_OUT_OF_RANGE);
    EXPECT_EQ(s, nullptr);
    EXPECT_NE(std::string(qc_last_error()), "");
    EXPECT_EQ(qc_state_werner(0.5, nullptr), QC_INVALID_ARGUMENT);

    const double bad[4] = {0.1, 0.2, 0.3, 0.4};
    EXPECT_EQ(qc_state_bell_diagonal(bad, &s), QC_OUT_OF_RANGE);

    double re[16] = {}, im[16] = {};
    re[0] = 1.0;
    im[1] = 0.5;  // not Hermitian
    EXPECT_EQ(qc_state_dense(re, im, &s), QC_NOT_HERMITIAN);
    im[1] = 0.0;
    EXPECT_EQ(qc_state_dense(re, im, &s), QC_OK);
    qc_state_free(s);
    re[1] = NAN;
    EXPECT_EQ(qc_state_dense(re, im, &s), QC_INVALID_ARGUMENT);
}

TEST(c_api, state_accessors) {
    const State s = werner(1.0);
    double re[16], im[16];
    ASSERT_EQ(qc_state_matrix(s.get(), re, im), QC_OK);
    EXPECT_NEAR(re[5], 0.5, 1e-15);   // <01|S|01>
    EXPECT_NEAR(re[6], -0.5, 1e-15);  // <01|S|10>
    double ev[4];
    ASSERT_EQ(qc_state_eigenvalues(s.get(), ev), QC_OK);
    EXPECT_NEAR(ev[0], 1.0, 1e-14);

    qc_state *raw = nullptr;
    ASSERT_EQ(qc_state_dense(re, im, &raw), QC_OK);
    const State copy(raw);
    double d = 1.0;
    ASSERT_EQ(qc_state_distance(s.get(), copy.get(), &d), QC_OK);
    EXPECT_EQ(d, 0.0);
}

TEST(c_api, measures_bell_diagonal) {
    const double l[4] = {0.7, 0.1, 0.1, 0.1};
    qc_state *raw = nullptr;
    ASSERT_EQ(qc_state_bell_diagonal(l, &raw), QC_OK);
    const State s(raw);
    qc_measures m;
    ASSERT_EQ(qc_measure(s.get(), 0, &m), QC_OK);
    // (0.7, 0.1, 0.1, 0.1) is also the Werner state with w = 0.6.
    EXPECT_EQ(m.family, QC_FAMILY_WERNER);
    EXPECT_NEAR(m.family_params[0], 0.6, 1e-12);
    ASSERT_TRUE(m.has_monotones);
    EXPECT_NEAR(m.monotones[0], 0.7, 1e-12);
    EXPECT_NEAR(m.monotones[1], 4.0, 1e-12);
    EXPECT_NEAR(m.monotones[2], 6.0, 1e-12);
    EXPECT_EQ(m.rank, 4);
    EXPECT_TRUE(m.entangled);
    EXPECT_NEAR(m.concurrence, 0.4, 1e-10);  // 2 * 0.7 - 1
}

TEST(c_api, measures_pure_bell_has_infinite_monotones) {
    const double l[4] = {1, 0, 0, 0};
    qc_state *raw = nullptr;
    ASSERT_EQ(qc_state_bell_diagonal(l, &raw), QC_OK);
    const State s(raw);
    qc_measures m;
    ASSERT_EQ(qc_measure(s.get(), 0, &m), QC_OK);
    EXPECT_TRUE(std::isinf(m.monotones[1]));
    EXPECT_STREQ(qc_family_name(m.family), "werner");
}

TEST(c_api, decide_and_verdict_accessors) {
    const State a = mems(0.9, 0.1, 0, 0), b = mems(0.8, 0.2, 0, 0);
    qc_verdict *raw = nullptr;
    ASSERT_EQ(qc_decide(a.get(), b.get(), 0, 0, &raw), QC_OK);
    const VerdictPtr v(raw);
    EXPECT_EQ(qc_verdict_get_kind(v.get()), QC_CONVERTIBLE);
    EXPECT_EQ(qc_verdict_reason(v.get()), nullptr);
    double r = 1;
    ASSERT_EQ(qc_verdict_residual(v.get(), &r), 1);
    EXPECT_LT(r, 1e-10);
    const qc_protocol *p = qc_verdict_protocol(v.get());
    ASSERT_NE(p, nullptr);
    ASSERT_EQ(qc_protocol_size(p), 2u);
    qc_atom atom;
    ASSERT_EQ(qc_protocol_atom(p, 0, &atom), QC_OK);
    EXPECT_EQ(atom.type, QC_ATOM_LOCAL_UNITARY);
    EXPECT_NEAR(atom.weight, 8.0 / 9.0, 1e-15);
    EXPECT_EQ(qc_protocol_atom(p, 5, &atom), QC_OUT_OF_RANGE);

    qc_verdict *raw2 = nullptr;
    ASSERT_EQ(qc_decide(b.get(), a.get(), 0, 0, &raw2), QC_OK);
    const VerdictPtr back(raw2);
    EXPECT_EQ(qc_verdict_get_kind(back.get()), QC_FORBIDDEN);
    EXPECT_STREQ(qc_verdict_reason(back.get()), "EofDecrease");
    EXPECT_EQ(qc_verdict_protocol(back.get()), nullptr);
    EXPECT_EQ(qc_verdict_residual(back.get(), &r), 0);
    EXPECT_STREQ(qc_verdict_kind_name(QC_FORBIDDEN), "Forbidden");
}

TEST(c_api, protocol_builder_apply_and_verify) {
    qc_protocol *raw = nullptr;
    ASSERT_EQ(qc_protocol_new(&raw), QC_OK);
    const ProtocolPtr p(raw);
    ASSERT_EQ(qc_protocol_add_unitary(p.get(), 0.5, kI, kZero, kI, kZero), QC_OK);
    EXPECT_EQ(qc_protocol_validate(p.get()), QC_BAD_WEIGHTS);
    const State mixed = werner(0.0);
    ASSERT_EQ(qc_protocol_add_prepare(p.get(), 0.5, mixed.get()), QC_OK);
    EXPECT_EQ(qc_protocol_validate(p.get()), QC_OK);

    const State from = werner(1.0), to = werner(0.5);
    double residual = 1;
    ASSERT_EQ(qc_protocol_verify(p.get(), from.get(), to.get(), &residual), QC_OK);
    EXPECT_LT(residual, 1e-12);

    qc_state *out = nullptr;
    ASSERT_EQ(qc_protocol_apply(p.get(), from.get(), &out), QC_OK);
    const State applied(out);
    double d = 1;
    qc_state_distance(applied.get(), to.get(), &d);
    EXPECT_LT(d, 1e-12);

    const double two[4] = {2, 0, 0, 2};
    EXPECT_EQ(qc_protocol_add_unitary(p.get(), 0.1, two, kZero, kI, kZero), QC_NOT_UNITARY);
    const State singlet = werner(1.0);
    EXPECT_EQ(qc_protocol_add_prepare(p.get(), 0.1, singlet.get()), QC_NOT_SEPARABLE);
}

TEST(c_api, synthesize_mems_and_werner) {
    const State a = mems(0.5, 0.2, 0.2, 0.1), b = mems(0.44, 0.24, 0.2, 0.12);
    qc_synthesis s;
    qc_protocol *raw = nullptr;
    ASSERT_EQ(qc_synthesize(a.get(), b.get(), 0, &s, &raw), QC_OK) << qc_last_error();
    const ProtocolPtr p(raw);
    EXPECT_EQ(s.family, QC_FAMILY_MEMS);
    EXPECT_NEAR(s.W, 0.8, 1e-12);
    EXPECT_NEAR(s.p01, 0.4, 1e-12);
    EXPECT_NEAR(s.p00_11, 0.4, 1e-12);
    EXPECT_NEAR(s.p10, 0.2, 1e-12);
    double residual = 1;
    ASSERT_EQ(qc_protocol_verify(p.get(), a.get(), b.get(), &residual), QC_OK);
    EXPECT_LT(residual, 1e-10);

    const State w1 = werner(0.9), w2 = werner(0.45);
    ASSERT_EQ(qc_synthesize(w1.get(), w2.get(), 0, &s, nullptr), QC_OK);
    EXPECT_EQ(s.family, QC_FAMILY_WERNER);
    EXPECT_NEAR(s.W, 0.5, 1e-12);
    EXPECT_EQ(qc_synthesize(w2.get(), w1.get(), 0, &s, nullptr), QC_INFEASIBLE);

    const State m1 = mems(0.9, 0.1, 0, 0), m2 = mems(0.95, 0.05, 0, 0);
    EXPECT_EQ(qc_synthesize(m1.get(), m2.get(), 0, &s, nullptr), QC_INFEASIBLE);
    EXPECT_NE(std::string(qc_last_error()).find("W"), std::string::npos);

    const double bl[4] = {0.7, 0.2, 0.1, 0.0};
    qc_state *bd = nullptr;
    ASSERT_EQ(qc_state_bell_diagonal(bl, &bd), QC_OK);
    const State bell(bd);
    EXPECT_EQ(qc_synthesize(bell.get(), m1.get(), 0, &s, nullptr), QC_INVALID_ARGUMENT);
}

TEST(c_api, search_and_audit) {
    const State a = werner(0.9), b = werner(0.45);
    qc_search_result r;
    qc_protocol *raw = nullptr;
    ASSERT_EQ(qc_search(a.get(), b.get(), 3000, 42, &r, &raw), QC_OK);
    const ProtocolPtr p(raw);
    EXPECT_TRUE(r.found);
    EXPECT_LT(r.best_distance, 1e-6);
    ASSERT_NE(p, nullptr);

    qc_audit_report rep;
    ASSERT_EQ(qc_audit(200, 42, &rep), QC_OK);
    EXPECT_EQ(rep.trials, 200u);
    EXPECT_EQ(rep.rank_findings, 0u);
    EXPECT_EQ(rep.monotone_findings, 0u);
}

TEST(c_api, null_handles_are_safe) {
    qc_state_free(nullptr);
    qc_protocol_free(nullptr);
    qc_verdict_free(nullptr);
    EXPECT_EQ(qc_protocol_size(nullptr), 0u);
    EXPECT_EQ(qc_verdict_protocol(nullptr), nullptr);
    EXPECT_EQ(qc_verdict_reason(nullptr), nullptr);
    qc_measures m;
    EXPECT_EQ(qc_measure(nullptr, 0, &m), QC_INVALID_ARGUMENT);
}
