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

#include "orthoris/rs_models.hpp"
#include "orthoris/types.hpp"

namespace orthoris
{
    // H = H0 + H1 Theta H2 with H0: M x K (direct), H1: M x N (RS -> BS), H2: N x K (UE -> RS).
    struct ChannelTriple
    {
        CMatrix H0, H1, H2;

        Index M() const { return H1.rows(); }
        Index K() const { return H2.cols(); }
        Index N() const { return H1.cols(); }

        // Throws Errc::dimension_mismatch / Errc::invalid_argument.
        void validate() const;

        CMatrix channel(const CMatrix &theta) const { return H0 + H1 * theta * H2; }
    };

    // One free reflection variable and the vec(Theta) positions it drives.
    // Theta = unvec(sum_v x_v * coefficient_v * sum_{p in positions_v} e_p).
    struct FreeVariable
    {
        std::vector<Index> positions;
        double coefficient = 1.0;
    };

    // How the d free variables of a kind embed into vec(Theta):
    //   fris  - canonical vec positions (identity)
    //   aris  - diagonal positions (Z_D)
    //   bdris - upper triangle, mirrored: (K + I) Z_U, weight 2 on the diagonal
    // Reduced layouts keep only MK of those variables.
    struct VariableLayout
    {
        RsKind kind = RsKind::fris;
        Index N = 0;
        std::vector<FreeVariable> variables;

        Index size() const { return Index(variables.size()); }

        // Dense N^2 x d embedding matrix.
        RMatrix embedding() const;

        // Apply the embedding to a d-vector of free variables -> N x N Theta.
        CMatrix theta(const CVector &x) const;
    };

    VariableLayout full_layout(RsKind kind, Index N);

    // MK variables whose effective-map columns are generically independent.
    // fris: the top-left M x K block of Theta; aris: the first MK diagonal
    // entries; bdris: greedy rank-revealing pick over the upper triangle in vec
    // order, decided on a fixed generic reference channel.
    VariableLayout reduced_layout(RsKind kind, Index M, Index K, Index N);

    // Linear map from the free variables to vec(H - H0).
    struct EffectiveMap
    {
        RsKind kind = RsKind::fris;
        Index M = 0, K = 0, N = 0;
        VariableLayout layout;
        CMatrix matrix;      // MK x d
        CMatrix pinv_matrix; // d x MK
        CMatrix lift;        // N^2 x MK: vec(Theta) = lift * vec(target - H0)
        Index rank = 0;

        bool rank_feasible() const { return rank == M * K; }

        // Theta = unvec(lift * c)
        CMatrix theta_for(const CVector &c) const;

        // Builds pinv / lift / rank from an (estimated or exact) map matrix.
        static EffectiveMap from_matrix(RsKind kind, Index M, Index K, VariableLayout layout, CMatrix matrix);
    };

    struct SolveReport
    {
        CMatrix theta;
        double residual = 0.0; // ||H0 + H1 Theta H2 - target||_F
        bool rank_feasible = false;
        bool passive = false;
        ConstraintReport constraint;
    };

} // namespace orthoris

namespace orthoris::solvers
{
    // Numeric rank cutoff for feasibility, shared by the map pseudoinverse.
    inline constexpr double rank_cutoff = 1e-10;

    // fris: max(M, K); bdris: M + K - 1; aris: M K. ris has no closed-form solver.
    Index min_elements(RsKind kind, Index M, Index K);

    // Column of H2^T kron H1 for vec position p = i + j N, i.e. vec(h1_i h2_j^T).
    CVector cascade_column(const CMatrix &H1, const CMatrix &H2, Index position);

    EffectiveMap build_effective_map(RsKind kind, const CMatrix &H1, const CMatrix &H2);
    EffectiveMap build_effective_map(const VariableLayout &layout, const CMatrix &H1, const CMatrix &H2);

    bool rank_feasible(RsKind kind, const CMatrix &H1, const CMatrix &H2);

    // Theta = unvec(lift * vec(target - H0)). Rank-infeasible maps still return
    // the least-squares Theta, with rank_feasible = false.
    SolveReport solve(RsKind kind, const ChannelTriple &channels, const CMatrix &target);
    SolveReport solve(const EffectiveMap &map, const ChannelTriple &channels, const CMatrix &target);

    // Theta = pinv(H1) (target - H0) pinv(H2). Throws Errc::infeasible if H1 or
    // H2 is rank deficient or N < max(M, K).
    CMatrix solve_fris_compact(const ChannelTriple &channels, const CMatrix &target);

} // namespace orthoris::solvers
