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


#include <numbers>

#include <gtest/gtest.h>

#include "orthoris/matcore.hpp"
#include "orthoris/rs_models.hpp"
#include "test_util.hpp"

using namespace orthoris;
using namespace orthoris::test;

namespace
{
    CMatrix random_phases(std::mt19937_64 &g, Index N)
    {
        std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
        CMatrix T = CMatrix::Zero(N, N);
        for (Index i = 0; i < N; ++i)
            T(i, i) = std::polar(1.0, u(g));
        return T;
    }
} // namespace

TEST(RsKindNames, RoundTrip)
{
    for (RsKind k : {RsKind::ris, RsKind::aris, RsKind::bdris, RsKind::fris})
        EXPECT_EQ(parse_rs_kind(to_string(k)), k);
    EXPECT_EQ(parse_rs_kind("BD-RIS"), RsKind::bdris);
    EXPECT_THROW(parse_rs_kind("xris"), Error);
}

TEST(Check, IdentityIsBoundaryBdris)
{
    const ConstraintReport r = rs::check(CMatrix::Identity(4, 4), RsKind::bdris);
    EXPECT_TRUE(r.structure_ok);
    EXPECT_NEAR(r.passivity_margin, 0.0, 1e-15);
}

TEST(Check, PhaseMatrixIsInEverySet)
{
    std::mt19937_64 g(30);
    const CMatrix T = random_phases(g, 5);
    for (RsKind k : {RsKind::ris, RsKind::aris, RsKind::bdris, RsKind::fris})
        EXPECT_TRUE(rs::check(T, k).structure_ok) << to_string(k);
}

TEST(Check, OverUnitScaleFailsPassivity)
{
    const CMatrix T = 1.1 * CMatrix::Identity(3, 3);
    for (RsKind k : {RsKind::aris, RsKind::bdris, RsKind::fris})
    {
        const ConstraintReport r = rs::check(T, k);
        EXPECT_NEAR(r.passivity_margin, -0.21, 1e-12);
        EXPECT_FALSE(r.structure_ok) << to_string(k);
    }
    EXPECT_FALSE(rs::check(T, RsKind::ris).structure_ok);
}

TEST(Check, StructureDefects)
{
    std::mt19937_64 g(31);
    CMatrix A = randn(g, 4, 4);
    A /= 2.0 * matcore::spectral_norm(A);
    const ConstraintReport r = rs::check(A, RsKind::bdris);
    EXPECT_FALSE(r.structure_ok);
    EXPECT_NEAR(r.symmetry_defect, (A - A.transpose()).norm(), 1e-14);
    EXPECT_TRUE(rs::check(A, RsKind::fris).structure_ok);
    EXPECT_FALSE(rs::check(A, RsKind::aris).structure_ok);
    EXPECT_GE(r.diagonality_defect, 0.0);
    EXPECT_GE(r.modulus_defect, 0.0);
}

TEST(Check, NestingOnRandomMembers)
{
    std::mt19937_64 g(32);
    std::uniform_real_distribution<double> amp(0.0, 1.0);
    for (int t = 0; t < 50; ++t)
    {
        // RIS member
        const CMatrix ris = random_phases(g, 4);
        // ARIS member
        CMatrix aris = random_phases(g, 4);
        for (Index i = 0; i < 4; ++i)
            aris(i, i) *= amp(g);
        // BDRIS member: symmetric, spectral norm <= 1
        CMatrix S = randn(g, 4, 4);
        S = S + S.transpose().eval();
        S /= matcore::spectral_norm(S) * (1.0 + amp(g));
        const CMatrix members[] = {ris, aris, S};
        for (int level = 0; level < 3; ++level)
        {
            const RsKind kinds[] = {RsKind::ris, RsKind::aris, RsKind::bdris, RsKind::fris};
            for (int k = level; k < 4; ++k)
                EXPECT_TRUE(rs::check(members[level], kinds[k]).structure_ok) << level << " in " << k;
        }
    }
}

TEST(Check, DiagonalSpectralNormIsMaxModulus)
{
    std::mt19937_64 g(33);
    CMatrix D = CMatrix::Zero(5, 5);
    double mx = 0.0;
    for (Index i = 0; i < 5; ++i)
    {
        D(i, i) = randn(g, 1, 1)(0, 0);
        mx = std::max(mx, std::abs(D(i, i)));
    }
    EXPECT_NEAR(matcore::spectral_norm(D), mx, 1e-14 * mx);
}

TEST(Impedance, Examples)
{
    const Index N = 3;
    const CMatrix I = CMatrix::Identity(N, N);
    EXPECT_LT((rs::impedance_to_reflection(CMatrix::Zero(N, N)) + I).norm(), 1e-15);
    const CMatrix T = rs::impedance_to_reflection(cplx(0.0, 1.0) * I);
    for (Index i = 0; i < N; ++i)
        EXPECT_NEAR(std::abs(T(i, i)), 1.0, 1e-14);
    EXPECT_LT((rs::reflection_to_impedance(CMatrix::Zero(N, N)) - I).norm(), 1e-15);
    EXPECT_LT(rs::reflection_to_impedance(-I).norm(), 1e-15);
}

TEST(Impedance, RoundTripAndSymmetry)
{
    std::mt19937_64 g(34);
    for (int t = 0; t < 20; ++t)
    {
        // complex symmetric Z = R + jX with R symmetric positive definite
        const RMatrix a = RMatrix::Random(4, 4), b = RMatrix::Random(4, 4);
        const RMatrix R = a * a.transpose() + 0.1 * RMatrix::Identity(4, 4);
        const RMatrix X = b + b.transpose();
        CMatrix Z(4, 4);
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 4; ++j)
                Z(i, j) = cplx(R(i, j), X(i, j));
        const CMatrix T = rs::impedance_to_reflection(Z);
        EXPECT_LT(rel_err(rs::reflection_to_impedance(T), Z), 1e-10);

        CMatrix S = randn(g, 4, 4);
        S = S + S.transpose().eval();
        S *= 0.9 / matcore::spectral_norm(S);
        const CMatrix Zs = rs::reflection_to_impedance(S);
        EXPECT_LT((Zs - Zs.transpose()).norm(), 1e-12 * Zs.norm());
        EXPECT_LT(rel_err(rs::impedance_to_reflection(Zs), S), 1e-10);
    }
}

TEST(Impedance, SingularMapsThrow)
{
    const CMatrix I = CMatrix::Identity(2, 2);
    try
    {
        (void)rs::reflection_to_impedance(I);
        FAIL();
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.code(), Errc::map_undefined);
    }
    EXPECT_THROW((void)rs::impedance_to_reflection(-I), Error);
}
