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

#include <vector>

#include "orthoris/types.hpp"

// Structural linear algebra shared by all solvers. Every vectorization in the
// library is column-major: vec(A)[i + j*m] = A(i, j), which makes
//     vec(A X B) = (B^T kron A) vec(X).

namespace orthoris::matcore
{
    CVector vec(const CMatrix &A);

    // Throws Errc::dimension_mismatch unless v.size() == m * n.
    CMatrix unvec(const CVector &v, Index m, Index n);

    CMatrix kron(const CMatrix &A, const CMatrix &B);

    // Permutation K with K * vec(A) = vec(A^T) for every N x N matrix A.
    RMatrix commutation_matrix(Index N);

    enum class SelectorKind
    {
        diagonal,
        upper,
        lower
    };

    // 0/1 matrix of shape N^2 x d that pads zeros: unvec(Z * x) places the d
    // entries of x on the selected positions. Columns follow vec order of the
    // selected positions.
    struct SelectorMatrix
    {
        SelectorKind kind;
        Index N = 0;
        RMatrix matrix;
        std::vector<Index> positions; // vec position selected by each column
    };

    SelectorMatrix selector(SelectorKind kind, Index N);

    inline constexpr double pinv_cutoff = 1e-12;

    // Moore-Penrose pseudoinverse; singular values below rel_cutoff * sigma_max
    // are treated as zero.
    CMatrix pinv(const CMatrix &A, double rel_cutoff = pinv_cutoff);

    // Descending singular values.
    RVector singular_values(const CMatrix &A);

    Index numeric_rank(const CMatrix &A, double rel_cutoff);

    // Largest singular value. SVD up to 64 x 64, power iteration on A^H A above.
    double spectral_norm(const CMatrix &A);

    // Power iteration on A^H A (tolerance on the relative change of sigma^2).
    double spectral_norm_power(const CMatrix &A, double tol = 1e-10, int max_iter = 1000);

    struct TopSingular
    {
        double sigma = 0.0;
        CVector right; // unit right singular vector
    };

    TopSingular top_singular(const CMatrix &A);

    // sigma_max / sigma_min over the min(rows, cols) singular values; +inf if
    // sigma_min is zero.
    double condition_number(const CMatrix &A);

    // 10 log10 of the eigenvalue spread of A^H A, i.e. 20 log10 cond(A).
    double condition_number_db(const CMatrix &A);

    // Nearest semi-unitary matrix (polar rotation factor) U_A [I; 0] V_A^H.
    // Throws Errc::degenerate when A is not of full column rank.
    CMatrix stiefel_project(const CMatrix &A);

    // ||A^H A - I||_F
    double semi_unitary_defect(const CMatrix &A);

    bool all_finite(const CMatrix &A);

} // namespace orthoris::matcore
