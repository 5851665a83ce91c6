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


#pragma once

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "orthoris/types.hpp"

namespace orthoris::test
{
    // Test-local generators, independent of the library's RNG helpers.
    inline CMatrix randn(std::mt19937_64 &g, Index rows, Index cols, double variance = 1.0)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5 * variance));
        CMatrix A(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i)
            {
                const double re = n(g);
                A(i, j) = cplx(re, n(g));
            }
        return A;
    }

    inline CVector randn_vec(std::mt19937_64 &g, Index n, double variance = 1.0)
    {
        return randn(g, n, 1, variance);
    }

    // Gram-Schmidt on a Gaussian draw.
    inline CMatrix random_semi_unitary(std::mt19937_64 &g, Index M, Index K)
    {
        CMatrix A = randn(g, M, K);
        for (Index k = 0; k < K; ++k)
        {
            for (Index j = 0; j < k; ++j)
                A.col(k) -= A.col(j).dot(A.col(k)) * A.col(j);
            A.col(k) /= A.col(k).norm();
        }
        return A;
    }

    inline double rel_err(const CMatrix &a, const CMatrix &b)
    {
        const double s = std::max(1.0, b.norm());
        return (a - b).norm() / s;
    }

    // vec position of entry (i, j) in an m-row matrix
    inline Index vpos(Index i, Index j, Index m) { return i + j * m; }

    // Two-sided Jacobi SVD (the library uses divide and conquer).
    inline RVector singular_values_oracle(const CMatrix &A)
    {
        Eigen::JacobiSVD<CMatrix> svd(A);
        return svd.singularValues();
    }
} // namespace orthoris::test
