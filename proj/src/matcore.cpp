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


#include "orthoris/matcore.hpp"

#include <cmath>
#include <limits>

namespace orthoris::matcore
{
    CVector vec(const CMatrix &A)
    {
        return A.reshaped();
    }

    CMatrix unvec(const CVector &v, Index m, Index n)
    {
        if (m < 0 || n < 0 || v.size() != m * n)
            throw Error(Errc::dimension_mismatch, "unvec: vector of length " + std::to_string(v.size()) +
                                                      " cannot be reshaped to " + std::to_string(m) + "x" +
                                                      std::to_string(n));
        return v.reshaped(m, n);
    }

    CMatrix kron(const CMatrix &A, const CMatrix &B)
    {
        const Index p = B.rows(), q = B.cols();
        CMatrix out(A.rows() * p, A.cols() * q);
        for (Index j = 0; j < A.cols(); ++j)
            for (Index i = 0; i < A.rows(); ++i)
                out.block(i * p, j * q, p, q) = A(i, j) * B;
        return out;
    }

    RMatrix commutation_matrix(Index N)
    {
        if (N < 1)
            throw Error(Errc::invalid_argument, "commutation_matrix: N must be >= 1");
        // vec(A)[i + jN] = A(i,j) = A^T(j,i) = vec(A^T)[j + iN]
        RMatrix K = RMatrix::Zero(N * N, N * N);
        for (Index j = 0; j < N; ++j)
            for (Index i = 0; i < N; ++i)
                K(j + i * N, i + j * N) = 1.0;
        return K;
    }

    SelectorMatrix selector(SelectorKind kind, Index N)
    {
        if (N < 1)
            throw Error(Errc::invalid_argument, "selector: N must be >= 1");

        SelectorMatrix Z;
        Z.kind = kind;
        Z.N = N;
        for (Index j = 0; j < N; ++j)
            for (Index i = 0; i < N; ++i)
            {
                const bool take = (kind == SelectorKind::diagonal && i == j) ||
                                  (kind == SelectorKind::upper && i <= j) ||
                                  (kind == SelectorKind::lower && i >= j);
                if (take)
                    Z.positions.push_back(i + j * N);
            }

        Z.matrix = RMatrix::Zero(N * N, Index(Z.positions.size()));
        for (Index c = 0; c < Index(Z.positions.size()); ++c)
            Z.matrix(Z.positions[c], c) = 1.0;
        return Z;
    }

    namespace
    {
        // BDCSVD switches to Jacobi internally for small blocks
        Eigen::BDCSVD<CMatrix> svd_of(const CMatrix &A, unsigned options)
        {
            return Eigen::BDCSVD<CMatrix>(A, options);
        }
    } // namespace

    CMatrix pinv(const CMatrix &A, double rel_cutoff)
    {
        if (A.size() == 0)
            return CMatrix::Zero(A.cols(), A.rows());

        const auto svd = svd_of(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVector &s = svd.singularValues();
        const double threshold = rel_cutoff * (s.size() > 0 ? s(0) : 0.0);

        RVector s_inv = RVector::Zero(s.size());
        for (Index i = 0; i < s.size(); ++i)
            if (s(i) > threshold && s(i) > 0.0)
                s_inv(i) = 1.0 / s(i);

        return svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().adjoint();
    }

    RVector singular_values(const CMatrix &A)
    {
        if (A.size() == 0)
            return RVector();
        return svd_of(A, 0).singularValues();
    }

    Index numeric_rank(const CMatrix &A, double rel_cutoff)
    {
        const RVector s = singular_values(A);
        if (s.size() == 0 || s(0) == 0.0)
            return 0;
        Index r = 0;
        for (Index i = 0; i < s.size(); ++i)
            if (s(i) > rel_cutoff * s(0))
                ++r;
        return r;
    }

    double spectral_norm_power(const CMatrix &A, double tol, int max_iter)
    {
        if (A.size() == 0)
            return 0.0;

        // Deterministic, dense start vector so it is not orthogonal to the
        // dominant subspace for structured inputs.
        CVector x(A.cols());
        for (Index i = 0; i < x.size(); ++i)
            x(i) = cplx(1.0 + 0.37 * std::sin(double(i) + 1.0), 0.21 * std::cos(3.0 * double(i)));
        x.normalize();

        double lambda = 0.0;
        for (int it = 0; it < max_iter; ++it)
        {
            CVector y = A.adjoint() * (A * x);
            const double next = y.norm();
            if (next == 0.0)
                return 0.0;
            x = y / next;
            if (std::abs(next - lambda) <= tol * next)
            {
                lambda = next;
                return std::sqrt(lambda);
            }
            lambda = next;
        }
        // not converged: fall back to the exact route
        return singular_values(A)(0);
    }

    double spectral_norm(const CMatrix &A)
    {
        if (A.size() == 0)
            return 0.0;
        if (A.rows() <= 64 && A.cols() <= 64)
            return singular_values(A)(0);
        return spectral_norm_power(A);
    }

    TopSingular top_singular(const CMatrix &A)
    {
        TopSingular out;
        if (A.size() == 0)
            return out;
        const auto svd = svd_of(A, Eigen::ComputeThinV);
        out.sigma = svd.singularValues()(0);
        out.right = svd.matrixV().col(0);
        return out;
    }

    double condition_number(const CMatrix &A)
    {
        const RVector s = singular_values(A);
        if (s.size() == 0)
            return 1.0;
        const double smin = s(s.size() - 1);
        if (smin <= 0.0)
            return std::numeric_limits<double>::infinity();
        return s(0) / smin;
    }

    double condition_number_db(const CMatrix &A)
    {
        return 20.0 * std::log10(condition_number(A));
    }

    CMatrix stiefel_project(const CMatrix &A)
    {
        if (A.rows() < A.cols())
            throw Error(Errc::dimension_mismatch, "stiefel_project: needs rows >= cols");
        const auto svd = svd_of(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVector &s = svd.singularValues();
        if (s.size() == 0 || s(0) == 0.0 || !std::isfinite(s(0)) || s(s.size() - 1) <= 1e-12 * s(0))
            throw Error(Errc::degenerate, "stiefel_project: rank-deficient argument, projection not unique");
        return svd.matrixU() * svd.matrixV().adjoint();
    }

    double semi_unitary_defect(const CMatrix &A)
    {
        return (A.adjoint() * A - CMatrix::Identity(A.cols(), A.cols())).norm();
    }

    bool all_finite(const CMatrix &A)
    {
        return A.allFinite();
    }

} // namespace orthoris::matcore
