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


#include "orthoris/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orthoris/matcore.hpp"

namespace orthoris
{
    void ChannelTriple::validate() const
    {
        const Index m = H1.rows(), n = H1.cols(), k = H2.cols();
        if (m < 1 || n < 1 || k < 1)
            throw Error(Errc::invalid_argument, "channel triple: empty dimension");
        if (H2.rows() != n || H0.rows() != m || H0.cols() != k)
            throw Error(Errc::dimension_mismatch, "channel triple: need H0 MxK, H1 MxN, H2 NxK");
        if (!H0.allFinite() || !H1.allFinite() || !H2.allFinite())
            throw Error(Errc::invalid_argument, "channel triple: non-finite entries");
    }

    RMatrix VariableLayout::embedding() const
    {
        RMatrix E = RMatrix::Zero(N * N, size());
        for (Index v = 0; v < size(); ++v)
            for (Index p : variables[v].positions)
                E(p, v) += variables[v].coefficient;
        return E;
    }

    CMatrix VariableLayout::theta(const CVector &x) const
    {
        if (x.size() != size())
            throw Error(Errc::dimension_mismatch, "layout: free-variable vector has wrong length");
        CVector t = CVector::Zero(N * N);
        for (Index v = 0; v < size(); ++v)
            for (Index p : variables[v].positions)
                t(p) += variables[v].coefficient * x(v);
        return matcore::unvec(t, N, N);
    }

    CMatrix EffectiveMap::theta_for(const CVector &c) const
    {
        if (c.size() != M * K)
            throw Error(Errc::dimension_mismatch, "effective map: target vector must have length MK");
        return matcore::unvec(lift * c, N, N);
    }

    EffectiveMap EffectiveMap::from_matrix(RsKind kind, Index M, Index K, VariableLayout layout, CMatrix matrix)
    {
        if (matrix.rows() != M * K || matrix.cols() != layout.size())
            throw Error(Errc::dimension_mismatch, "effective map: matrix must be MK x d");

        EffectiveMap map;
        map.kind = kind;
        map.M = M;
        map.K = K;
        map.N = layout.N;
        map.matrix = std::move(matrix);
        map.pinv_matrix = matcore::pinv(map.matrix, solvers::rank_cutoff);
        map.rank = matcore::numeric_rank(map.matrix, solvers::rank_cutoff);

        // lift = E * pinv, applied row by row from the sparse layout
        map.lift = CMatrix::Zero(map.N * map.N, M * K);
        for (Index v = 0; v < layout.size(); ++v)
            for (Index p : layout.variables[v].positions)
                map.lift.row(p) += layout.variables[v].coefficient * map.pinv_matrix.row(v);

        map.layout = std::move(layout);
        return map;
    }

    VariableLayout full_layout(RsKind kind, Index N)
    {
        if (N < 1)
            throw Error(Errc::invalid_argument, "layout: N must be >= 1");

        VariableLayout L;
        L.kind = kind;
        L.N = N;
        switch (kind)
        {
        case RsKind::fris:
            for (Index p = 0; p < N * N; ++p)
                L.variables.push_back({{p}, 1.0});
            break;
        case RsKind::ris: // the diagonal variable space; unit modulus is not linear
        case RsKind::aris:
            for (Index n = 0; n < N; ++n)
                L.variables.push_back({{n + n * N}, 1.0});
            break;
        case RsKind::bdris:
            // upper triangle in vec (column-major) order
            for (Index j = 0; j < N; ++j)
                for (Index i = 0; i <= j; ++i)
                {
                    if (i == j)
                        L.variables.push_back({{i + j * N}, 2.0});
                    else
                        L.variables.push_back({{i + j * N, j + i * N}, 1.0});
                }
            break;
        }
        return L;
    }

    namespace
    {
        // Fixed generic reference draw for structural (probability-one) rank decisions.
        std::pair<CMatrix, CMatrix> reference_channels(Index M, Index K, Index N)
        {
            std::mt19937_64 rng(0x5eed'0f'a11ULL + std::uint64_t(1000003 * M + 1009 * K + N));
            std::normal_distribution<double> g(0.0, 1.0);
            CMatrix H1(M, N), H2(N, K);
            for (Index i = 0; i < H1.size(); ++i)
                H1.data()[i] = cplx(g(rng), g(rng));
            for (Index i = 0; i < H2.size(); ++i)
                H2.data()[i] = cplx(g(rng), g(rng));
            return {H1, H2};
        }

        VariableLayout greedy_reduce(const VariableLayout &full, Index M, Index K)
        {
            const auto [H1, H2] = reference_channels(M, K, full.N);
            const EffectiveMap ref = solvers::build_effective_map(full, H1, H2);
            const Index target = M * K;

            VariableLayout out;
            out.kind = full.kind;
            out.N = full.N;
            std::vector<bool> used(full.size(), false);
            CMatrix picked(target, 0);
            for (Index v = 0; v < full.size() && out.size() < target; ++v)
            {
                CMatrix trial(target, picked.cols() + 1);
                trial << picked, ref.matrix.col(v);
                if (matcore::numeric_rank(trial, solvers::rank_cutoff) == trial.cols())
                {
                    picked = trial;
                    out.variables.push_back(full.variables[v]);
                    used[v] = true;
                }
            }
            // rank-deficient kind/N: pad so the configuration count is still MK
            for (Index v = 0; v < full.size() && out.size() < target; ++v)
                if (!used[v])
                    out.variables.push_back(full.variables[v]);
            return out;
        }
    } // namespace

    VariableLayout reduced_layout(RsKind kind, Index M, Index K, Index N)
    {
        const VariableLayout full = full_layout(kind, N);
        const Index target = M * K;
        if (full.size() <= target)
            return full;

        switch (kind)
        {
        case RsKind::ris:
        case RsKind::aris:
        {
            VariableLayout L = full;
            L.variables.resize(std::size_t(target));
            return L;
        }
        case RsKind::fris:
            if (N >= M && N >= K)
            {
                VariableLayout L;
                L.kind = kind;
                L.N = N;
                for (Index j = 0; j < K; ++j)
                    for (Index i = 0; i < M; ++i)
                        L.variables.push_back({{i + j * N}, 1.0});
                return L;
            }
            return greedy_reduce(full, M, K);
        case RsKind::bdris:
            return greedy_reduce(full, M, K);
        }
        return full;
    }

} // namespace orthoris

namespace orthoris::solvers
{
    Index min_elements(RsKind kind, Index M, Index K)
    {
        if (M < 1 || K < 1)
            throw Error(Errc::invalid_argument, "min_elements: M and K must be >= 1");
        switch (kind)
        {
        case RsKind::fris:
            return std::max(M, K);
        case RsKind::bdris:
            return M + K - 1;
        case RsKind::aris:
            return M * K;
        case RsKind::ris:
            break;
        }
        throw Error(Errc::invalid_argument, "min_elements: no closed-form bound for ris");
    }

    CVector cascade_column(const CMatrix &H1, const CMatrix &H2, Index position)
    {
        const Index N = H1.cols();
        const Index i = position % N, j = position / N;
        // vec(h1_i h2_j^T) = h2_j kron h1_i
        const Index M = H1.rows(), K = H2.cols();
        CVector col(M * K);
        for (Index k = 0; k < K; ++k)
            col.segment(k * M, M) = H2(j, k) * H1.col(i);
        return col;
    }

    EffectiveMap build_effective_map(const VariableLayout &layout, const CMatrix &H1, const CMatrix &H2)
    {
        if (H1.cols() != H2.rows() || H1.cols() != layout.N)
            throw Error(Errc::dimension_mismatch, "build_effective_map: H1 is MxN, H2 is NxK with N matching the layout");
        const Index M = H1.rows(), K = H2.cols();

        CMatrix matrix = CMatrix::Zero(M * K, layout.size());
        for (Index v = 0; v < layout.size(); ++v)
            for (Index p : layout.variables[v].positions)
                matrix.col(v) += layout.variables[v].coefficient * cascade_column(H1, H2, p);

        return EffectiveMap::from_matrix(layout.kind, M, K, layout, std::move(matrix));
    }

    EffectiveMap build_effective_map(RsKind kind, const CMatrix &H1, const CMatrix &H2)
    {
        return build_effective_map(full_layout(kind, H1.cols()), H1, H2);
    }

    bool rank_feasible(RsKind kind, const CMatrix &H1, const CMatrix &H2)
    {
        return build_effective_map(kind, H1, H2).rank_feasible();
    }

    SolveReport solve(const EffectiveMap &map, const ChannelTriple &channels, const CMatrix &target)
    {
        channels.validate();
        if (target.rows() != channels.H0.rows() || target.cols() != channels.H0.cols())
            throw Error(Errc::dimension_mismatch, "solve: target must have the shape of H0");
        if (map.M != channels.M() || map.K != channels.K() || map.N != channels.N())
            throw Error(Errc::dimension_mismatch, "solve: effective map does not match the channels");

        SolveReport r;
        r.theta = map.theta_for(matcore::vec(target - channels.H0));
        r.residual = (channels.channel(r.theta) - target).norm();
        r.rank_feasible = map.rank_feasible();
        r.constraint = rs::check(r.theta, map.kind);
        r.passive = r.constraint.passive(rs::structure_tolerance);
        return r;
    }

    SolveReport solve(RsKind kind, const ChannelTriple &channels, const CMatrix &target)
    {
        channels.validate();
        return solve(build_effective_map(kind, channels.H1, channels.H2), channels, target);
    }

    CMatrix solve_fris_compact(const ChannelTriple &channels, const CMatrix &target)
    {
        channels.validate();
        if (target.rows() != channels.H0.rows() || target.cols() != channels.H0.cols())
            throw Error(Errc::dimension_mismatch, "solve_fris_compact: target must have the shape of H0");
        const Index M = channels.M(), K = channels.K(), N = channels.N();
        if (N < std::max(M, K))
            throw Error(Errc::infeasible, "solve_fris_compact: N < max(M, K)");
        if (matcore::numeric_rank(channels.H1, rank_cutoff) < M || matcore::numeric_rank(channels.H2, rank_cutoff) < K)
            throw Error(Errc::infeasible, "solve_fris_compact: H1 or H2 is rank deficient");

        return matcore::pinv(channels.H1, rank_cutoff) * (target - channels.H0) * matcore::pinv(channels.H2, rank_cutoff);
    }

} // namespace orthoris::solvers
