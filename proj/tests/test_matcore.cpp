// SPDX-License-Identifier: Apache-2.0
//
// orthoris - channel orthogonalization with reconfigurable surfaces
// Copyright (C) 2026 The orthoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <gtest/gtest.h>

#include "orthoris/matcore.hpp"
#include "test_util.hpp"

using namespace orthoris;
using namespace orthoris::test;
namespace mc = orthoris::matcore;

TEST(Vec, ColumnMajor)
{
    CMatrix A(2, 2);
    A << 1.0, 3.0, 2.0, 4.0;
    const CVector v = mc::vec(A);
    ASSERT_EQ(v.size(), 4);
    for (int i = 0; i < 4; ++i)
        EXPECT_EQ(v(i), cplx(i + 1.0, 0.0));
}

TEST(Vec, RoundTrips)
{
    std::mt19937_64 g(1);
    const CVector v = randn_vec(g, 12);
    EXPECT_EQ(mc::vec(mc::unvec(v, 3, 4)), v);
    const CMatrix A = randn(g, 5, 3);
    EXPECT_EQ(mc::unvec(mc::vec(A), 5, 3), A);
}

TEST(Vec, OuterProductIsKronecker)
{
    std::mt19937_64 g(2);
    const CVector a = randn_vec(g, 3), b = randn_vec(g, 4);
    const CVector v = mc::vec(a * b.transpose());
    // (b kron a)_{i + 3 j} = b_j a_i
    for (Index j = 0; j < 4; ++j)
        for (Index i = 0; i < 3; ++i)
            EXPECT_NEAR(std::abs(v(i + 3 * j) - b(j) * a(i)), 0.0, 1e-15);
}

TEST(Unvec, ExamplesAndErrors)
{
    CVector v(4);
    v << 1.0, 2.0, 3.0, 4.0;
    const CMatrix A = mc::unvec(v, 2, 2);
    EXPECT_EQ(A(0, 1), cplx(3.0));
    EXPECT_EQ(A(1, 0), cplx(2.0));
    try
    {
        (void)mc::unvec(v, 3, 2);
        FAIL() << "expected dimension_mismatch";
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.code(), Errc::dimension_mismatch);
    }
}

TEST(Unvec, DiagonalSelectorGivesDiag)
{
    std::mt19937_64 g(3);
    const Index N = 4;
    const CVector x = randn_vec(g, N);
    const mc::SelectorMatrix Z = mc::selector(mc::SelectorKind::diagonal, N);
    const CMatrix D = mc::unvec(Z.matrix.cast<cplx>() * x, N, N);
    CMatrix expect = CMatrix::Zero(N, N);
    for (Index i = 0; i < N; ++i)
        expect(i, i) = x(i);
    EXPECT_EQ(D, expect);
}

namespace
{
    CMatrix kron_oracle(const CMatrix &A, const CMatrix &B)
    {
        CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
        for (Index i = 0; i < A.rows(); ++i)
            for (Index j = 0; j < A.cols(); ++j)
                for (Index p = 0; p < B.rows(); ++p)
                    for (Index q = 0; q < B.cols(); ++q)
                        K(i * B.rows() + p, j * B.cols() + q) = A(i, j) * B(p, q);
        return K;
    }
} // namespace

TEST(Kron, MatchesDefinition)
{
    std::mt19937_64 g(4);
    const CMatrix A = randn(g, 2, 3), B = randn(g, 3, 2);
    EXPECT_LT((mc::kron(A, B) - kron_oracle(A, B)).norm(), 1e-14);
}

TEST(Kron, IdentityIsBlockDiagonal)
{
    std::mt19937_64 g(5);
    const CMatrix B = randn(g, 2, 3);
    const CMatrix K = mc::kron(CMatrix::Identity(2, 2), B);
    CMatrix expect = CMatrix::Zero(4, 6);
    expect.block(0, 0, 2, 3) = B;
    expect.block(2, 3, 2, 3) = B;
    EXPECT_EQ(K, expect);
}

TEST(Kron, RankMultiplies)
{
    std::mt19937_64 g(6);
    const CMatrix A = randn(g, 3, 2), B = randn(g, 2, 4);
    const Index ra = mc::numeric_rank(A, 1e-10), rb = mc::numeric_rank(B, 1e-10);
    EXPECT_EQ(ra, 2);
    EXPECT_EQ(rb, 2);
    EXPECT_EQ(mc::numeric_rank(mc::kron(A, B), 1e-10), ra * rb);
}

TEST(Kron, VecIdentity)
{
    std::mt19937_64 g(7);
    const CMatrix A = randn(g, 2, 2), B = randn(g, 2, 2), X = randn(g, 2, 2);
    EXPECT_LT(rel_err(mc::kron(A, B) * mc::vec(X), mc::vec(B * X * A.transpose())), 1e-12);

    for (int t = 0; t < 10; ++t)
    {
        const CMatrix P = randn(g, 3, 4), Y = randn(g, 4, 2), Q = randn(g, 2, 5);
        EXPECT_LT(rel_err(mc::kron(Q.transpose(), P) * mc::vec(Y), mc::vec(P * Y * Q)), 1e-12);
    }
}

TEST(Commutation, SmallCases)
{
    EXPECT_EQ(mc::commutation_matrix(1), RMatrix::Ones(1, 1));
    RMatrix K2 = RMatrix::Zero(4, 4);
    K2(0, 0) = K2(1, 2) = K2(2, 1) = K2(3, 3) = 1.0;
    EXPECT_EQ(mc::commutation_matrix(2), K2);
}

TEST(Commutation, TransposesAndIsPermutation)
{
    std::mt19937_64 g(8);
    const Index N = 5;
    const RMatrix K = mc::commutation_matrix(N);
    for (Index c = 0; c < K.cols(); ++c)
    {
        EXPECT_EQ(K.col(c).sum(), 1.0);
        EXPECT_EQ(K.row(c).sum(), 1.0);
    }
    for (int t = 0; t < 20; ++t)
    {
        const CMatrix A = randn(g, N, N);
        EXPECT_EQ(K.cast<cplx>() * mc::vec(A), mc::vec(A.transpose()));
    }
}

TEST(Selector, Examples)
{
    const mc::SelectorMatrix D = mc::selector(mc::SelectorKind::diagonal, 2);
    ASSERT_EQ(D.matrix.rows(), 4);
    ASSERT_EQ(D.matrix.cols(), 2);
    EXPECT_EQ(D.matrix(0, 0), 1.0);
    EXPECT_EQ(D.matrix(3, 1), 1.0);
    EXPECT_EQ(D.matrix.sum(), 2.0);

    const mc::SelectorMatrix U = mc::selector(mc::SelectorKind::upper, 2);
    ASSERT_EQ(U.matrix.cols(), 3);
    EXPECT_EQ(U.positions, (std::vector<Index>{0, 2, 3}));
    for (Index c = 0; c < 3; ++c)
        EXPECT_EQ(U.matrix(U.positions[std::size_t(c)], c), 1.0);
}

TEST(Selector, LowerIsCommutedUpper)
{
    for (Index N : {2, 3, 4})
    {
        const RMatrix ZU = mc::selector(mc::SelectorKind::upper, N).matrix;
        const RMatrix ZL = mc::selector(mc::SelectorKind::lower, N).matrix;
        // same selected positions; the column order differs
        const RMatrix KZU = mc::commutation_matrix(N) * ZU;
        EXPECT_EQ(ZL.cols(), KZU.cols());
        EXPECT_EQ(RMatrix(ZL * ZL.transpose()), RMatrix(KZU * KZU.transpose())) << "N=" << N;
        // one 1 per column, at most one per row
        for (Index c = 0; c < ZU.cols(); ++c)
            EXPECT_EQ(ZU.col(c).sum(), 1.0);
        for (Index r = 0; r < ZU.rows(); ++r)
            EXPECT_LE(ZU.row(r).sum(), 1.0);
    }
}

namespace
{
    void expect_penrose(const CMatrix &A, const CMatrix &X, double tol)
    {
        const double s = std::max(1.0, A.norm());
        EXPECT_LT((A * X * A - A).norm() / s, tol);
        EXPECT_LT((X * A * X - X).norm() / std::max(1.0, X.norm()), tol);
        EXPECT_LT(((A * X).adjoint() - A * X).norm(), tol);
        EXPECT_LT(((X * A).adjoint() - X * A).norm(), tol);
    }
} // namespace

TEST(Pinv, Examples)
{
    EXPECT_LT((mc::pinv(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)).norm(), 1e-15);
    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = 2.0;
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 0) = 0.5;
    EXPECT_LT((mc::pinv(D) - expect).norm(), 1e-15);
}

TEST(Pinv, PenroseConditions)
{
    std::mt19937_64 g(9);
    const CMatrix A = randn(g, 4, 7);
    expect_penrose(A, mc::pinv(A), 1e-12);

    // prescribed condition number up to 1e6
    for (int t = 0; t < 10; ++t)
    {
        const CMatrix U = random_semi_unitary(g, 6, 4), V = random_semi_unitary(g, 5, 4);
        RVector s(4);
        for (Index i = 0; i < 4; ++i)
            s(i) = std::pow(10.0, -6.0 * double(i) / 3.0);
        const CMatrix B = U * s.cast<cplx>().asDiagonal() * V.adjoint();
        // projector symmetry degrades like cond * eps
        expect_penrose(B, mc::pinv(B), 1e-8);
        const CMatrix oracle = V * s.cwiseInverse().cast<cplx>().asDiagonal() * U.adjoint();
        EXPECT_LT((mc::pinv(B) - oracle).norm() / oracle.norm(), 1e-8);
    }
}

TEST(SpectralNorm, Examples)
{
    EXPECT_NEAR(mc::spectral_norm(CMatrix::Identity(5, 5)), 1.0, 1e-15);
    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = 0.3;
    D(1, 1) = 0.9;
    EXPECT_NEAR(mc::spectral_norm(D), 0.9, 1e-15);
}

TEST(SpectralNorm, MatchesSvdAndNormBounds)
{
    std::mt19937_64 g(10);
    for (int t = 0; t < 30; ++t)
    {
        const CMatrix A = randn(g, 8, 8);
        const RVector s = singular_values_oracle(A);
        const double n2 = mc::spectral_norm(A);
        EXPECT_NEAR(n2, s(0), 1e-10 * s(0));
        EXPECT_LE(n2, A.norm() * (1 + 1e-14));
        EXPECT_LE(A.norm(), std::sqrt(8.0) * n2 * (1 + 1e-14));
    }
    // power-iteration regime
    const CMatrix L = randn(g, 80, 70);
    EXPECT_NEAR(mc::spectral_norm(L), singular_values_oracle(L)(0), 1e-8 * singular_values_oracle(L)(0));
}

TEST(TopSingular, AttainsNorm)
{
    std::mt19937_64 g(11);
    const CMatrix A = randn(g, 6, 4);
    const mc::TopSingular t = mc::top_singular(A);
    EXPECT_NEAR(t.right.norm(), 1.0, 1e-12);
    EXPECT_NEAR((A * t.right).norm(), t.sigma, 1e-12 * t.sigma);
}

TEST(ConditionNumber, DiagonalAndSingular)
{
    CMatrix D = CMatrix::Zero(3, 2);
    D(0, 0) = 10.0;
    D(1, 1) = 1.0;
    EXPECT_NEAR(mc::condition_number(D), 10.0, 1e-12);
    EXPECT_NEAR(mc::condition_number_db(D), 20.0, 1e-12);
    EXPECT_TRUE(std::isinf(mc::condition_number(CMatrix::Zero(3, 2))));
}

TEST(Stiefel, FixedPointAndScaling)
{
    std::mt19937_64 g(12);
    const CMatrix U = random_semi_unitary(g, 5, 3);
    EXPECT_LT((mc::stiefel_project(U) - U).norm(), 1e-12);
    const CMatrix I = CMatrix::Identity(5, 3);
    EXPECT_LT((mc::stiefel_project(5.0 * I) - I).norm(), 1e-14);
}

TEST(Stiefel, NearestAmongSamples)
{
    std::mt19937_64 g(13);
    const CMatrix A = randn(g, 4, 2);
    const CMatrix P = mc::stiefel_project(A);
    EXPECT_LT(mc::semi_unitary_defect(P), 1e-12);
    const double best = (A - P).norm();
    for (int t = 0; t < 1000; ++t)
        EXPECT_GE((A - random_semi_unitary(g, 4, 2)).norm(), best - 1e-12);
}

TEST(Stiefel, RankDeficientThrows)
{
    CMatrix A = CMatrix::Zero(3, 2);
    A(0, 0) = 1.0;
    try
    {
        (void)mc::stiefel_project(A);
        FAIL();
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.code(), Errc::degenerate);
    }
}

TEST(Finite, Detection)
{
    CMatrix A = CMatrix::Ones(2, 2);
    EXPECT_TRUE(mc::all_finite(A));
    A(1, 1) = cplx(std::nan(""), 0.0);
    EXPECT_FALSE(mc::all_finite(A));
}
