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

#include "qconvert/qmat.hpp"

#include "gtest/gtest.h"

#include "qconvert/states.hpp"
#include "test_util.hpp"

using namespace qconvert;

TEST(qmat, kron_basis_action) {
    const CMat4 ix = kron2(pauli::I(), pauli::X());
    const CVec4 out = ix * basis_ket(0, 0);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out[i], basis_ket(0, 1)[i]);

    EXPECT_EQ(frobenius_distance(kron2(pauli::I(), pauli::I()), CMat4::identity()), 0.0);
}

TEST(qmat, kron_yy_is_antidiagonal) {
    const CMat4 yy = kron2(pauli::Y(), pauli::Y());
    int nonzero = 0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            if (yy(r, c) == cplx(0.0)) continue;
            ++nonzero;
            EXPECT_EQ(r + c, 3u);
            EXPECT_EQ(std::abs(yy(r, c)), 1.0);
            EXPECT_EQ(yy(r, c).imag(), 0.0);
        }
    EXPECT_EQ(nonzero, 4);
    EXPECT_EQ(yy(0, 3), cplx(-1.0));
    EXPECT_EQ(yy(1, 2), cplx(1.0));
}

TEST(qmat, kron_index_formula) {
    std::mt19937_64 rng(7);
    const CMat2 a = testutil::random_mat2(rng), b = testutil::random_mat2(rng);
    const CMat4 k = kron2(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q) EXPECT_EQ(k(2 * i + p, 2 * j + q), a(i, j) * b(p, q));
}

TEST(qmat, eig_identity_and_singlet) {
    const auto id = hermitian_eig(CMat4::identity());
    for (double v : id.values) EXPECT_NEAR(v, 1.0, 1e-15);

    const auto s = hermitian_eig(singlet_projector());
    EXPECT_NEAR(s.values[0], 1.0, 1e-14);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(s.values[k], 0.0, 1e-14);
}

TEST(qmat, eig_rejects_non_hermitian) {
    CMat4 m = CMat4::identity();
    m(0, 1) = 1.0;
    try {
        hermitian_eig(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
    // Within tolerance is accepted.
    m(0, 1) = 1e-12;
    EXPECT_NO_THROW(hermitian_eig(m));
}

TEST(qmat, eig_reconstruction_random) {
    std::mt19937_64 rng(2026);
    double worst_residual = 0.0, worst_ortho = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const CMat4 m = testutil::random_hermitian(rng);
        const auto e = hermitian_eig(m);
        worst_residual = std::max(worst_residual, frobenius_distance(e.reconstruct(), m));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                const double ip = std::abs(inner(e.vector(i), e.vector(j)));
                worst_ortho = std::max(worst_ortho, i == j ? std::abs(ip - 1.0) : ip);
            }
        for (std::size_t k = 1; k < 4; ++k) ASSERT_GE(e.values[k - 1], e.values[k]);
    }
    EXPECT_LT(worst_residual, 1e-10);
    EXPECT_LT(worst_ortho, 1e-10);
}

TEST(qmat, eig_degenerate_cluster) {
    // diag(2, 2, 1, 1) conjugated by a fixed unitary: any basis of the cluster is fine.
    CMat4 d;
    d(0, 0) = 2.0;
    d(1, 1) = 2.0;
    d(2, 2) = 1.0;
    d(3, 3) = 1.0;
    const CMat4 u = kron2(pauli::X(), CMat2::identity()) * kron2(CMat2::identity(), pauli::Y());
    const CMat4 m = u * d * u.adjoint();
    const auto e = hermitian_eig(m);
    EXPECT_NEAR(e.values[0], 2.0, 1e-13);
    EXPECT_NEAR(e.values[1], 2.0, 1e-13);
    EXPECT_NEAR(e.values[3], 1.0, 1e-13);
    EXPECT_LT(frobenius_distance(e.reconstruct(), m), 1e-12);
}

TEST(qmat, partial_transpose_product_invariant) {
    const CMat4 p = basis_projector(0, 1);
    EXPECT_EQ(frobenius_distance(partial_transpose(p, Subsystem::A), p), 0.0);
    EXPECT_EQ(frobenius_distance(partial_transpose(p, Subsystem::B), p), 0.0);
}

TEST(qmat, partial_transpose_singlet_spectrum) {
    const auto e = hermitian_eig(partial_transpose(singlet_projector(), Subsystem::B)).values;
    EXPECT_NEAR(e[0], 0.5, 1e-14);
    EXPECT_NEAR(e[1], 0.5, 1e-14);
    EXPECT_NEAR(e[2], 0.5, 1e-14);
    EXPECT_NEAR(e[3], -0.5, 1e-14);
}

TEST(qmat, partial_transpose_involution_and_trace) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 1000; ++t) {
        CMat4 m;
        for (auto &x : m.a) x = cplx(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
        for (auto s : {Subsystem::A, Subsystem::B})
            EXPECT_LE(frobenius_distance(partial_transpose(partial_transpose(m, s), s), m), 1e-14);

        // Unit-trace Hermitian: spectrum of the partial transpose sums to 1.
        // Near-traceless draws are skipped so the rescaled entries stay O(1).
        CMat4 h = testutil::random_hermitian(rng, -1.0, 1.0);
        if (std::abs(h.trace().real()) < 0.5) continue;
        h = h * cplx(1.0 / h.trace().real());
        const auto e = hermitian_eig(partial_transpose(h, Subsystem::A)).values;
        EXPECT_NEAR(e[0] + e[1] + e[2] + e[3], 1.0, 1e-12);
    }
}

TEST(qmat, partial_trace_cases) {
    const CMat2 half = CMat2::identity() * cplx(0.5);
    EXPECT_LT(frobenius_distance(partial_trace(singlet_projector(), Subsystem::A), half), 1e-15);
    EXPECT_LT(frobenius_distance(partial_trace(singlet_projector(), Subsystem::B), half), 1e-15);

    CMat2 zero_proj;
    zero_proj(0, 0) = 1.0;
    EXPECT_EQ(frobenius_distance(partial_trace(basis_projector(0, 1), Subsystem::A), zero_proj), 0.0);
}

TEST(qmat, partial_trace_of_kron_property) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 500; ++t) {
        const CMat2 a = testutil::random_mat2(rng), b = testutil::random_mat2(rng);
        const CMat4 k = kron2(a, b);
        EXPECT_LT(frobenius_distance(partial_trace(k, Subsystem::A), a * b.trace()), 1e-12);
        EXPECT_LT(frobenius_distance(partial_trace(k, Subsystem::B), b * a.trace()), 1e-12);
        EXPECT_LT(std::abs(partial_trace(k, Subsystem::A).trace() - k.trace()), 1e-12);
    }
}

TEST(qmat, numeric_rank_cases) {
    const double pure[4] = {1.0, 0.0, 0.0, 0.0};
    const double mixed[4] = {0.25, 0.25, 0.25, 0.25};
    const double edge[4] = {0.5, 0.5 - 1e-12, 1e-12, 0.0};
    EXPECT_EQ(numeric_rank(pure, 1e-9), 1);
    EXPECT_EQ(numeric_rank(mixed), 4);
    EXPECT_EQ(numeric_rank(edge), 2);
    EXPECT_THROW(numeric_rank(pure, 0.0), Error);
}
