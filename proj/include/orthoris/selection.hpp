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

#include <random>
#include <vector>

#include "orthoris/solvers.hpp"
#include "orthoris/types.hpp"

// Orthogonal channel selection: choose beta > 0 and a semi-unitary U (M x K)
// so that the reflection matrix forcing H = sqrt(beta) U stays passive, and
// make beta as large as possible.
//
// Throughout, with u = vec(U), h0 = vec(H0) and the kind's lift L,
//     Theta(beta, U) = unvec(L (sqrt(beta) u - h0))
//     ||Theta||_F^2  = beta g(U) - 2 sqrt(beta) f(U) + kappa
// where G = L^H L, w = G h0, g = u^H G u, f = Re(u^H w), kappa = h0^H G h0.

namespace orthoris
{
    struct OrthoTarget
    {
        double beta = 0.0;
        CMatrix U; // M x K, U^H U = I
    };

    struct CostCoefficients
    {
        CMatrix G;    // MK x MK Hermitian PSD
        CVector w;    // MK
        double kappa = 0.0;
        CVector h0;   // vec(H0)
        CMatrix lift; // N^2 x MK
        Index M = 0, K = 0, N = 0;

        static CostCoefficients from(const CMatrix &lift, const CMatrix &H0, Index N);

        double g(const CMatrix &U) const;
        double f(const CMatrix &U) const;
        bool direct_blocked() const { return h0.squaredNorm() == 0.0; }

        // Theta(beta, U)
        CMatrix theta(double beta, const CMatrix &U) const;
        // ||Theta(beta, U)||_2^2
        double spectral_power(double beta, const CMatrix &U) const;
    };

    enum class SelectionMode
    {
        algorithm1, // heuristic init, geodesic descent, beta fixed point
        simplified, // heuristic init + beta fixed point, no geodesic descent
        random      // Haar-random U + beta fixed point
    };

    std::string to_string(SelectionMode mode);
    SelectionMode parse_selection_mode(std::string_view name);

    struct DescentOptions
    {
        double initial_step = 1.0;
        double backtrack = 0.5;
        double armijo_slope = 1e-4;
        int max_backtracks = 30;
        int max_iterations = 200;
        double gradient_tolerance = 1e-10;  // on ||grad_R||_F^2 relative to max(1, |J|)
        double relative_decrease_tolerance = 1e-12;
        double orthonormality_drift = 1e-8; // re-project when ||U^H U - I||_F exceeds it
    };

    struct SelectionOptions
    {
        SelectionMode mode = SelectionMode::algorithm1;
        DescentOptions descent;
        double beta_tolerance = 1e-6; // relative change of beta between outer iterations
        int max_outer_iterations = 50;
        double passivity_slack = 1e-8; // ||Theta||_2^2 <= 1 + slack counts as passive
        std::uint64_t random_seed = 0; // SelectionMode::random only
    };

    enum class SelectionStatus
    {
        orthogonalized,
        needs_amplification
    };

    std::string to_string(SelectionStatus status);

    struct SelectionTrace
    {
        std::vector<double> ratio_objective;   // geodesic ascent on f^2 / g
        std::vector<double> power_objective;   // fixed-beta descents, last value of each
        std::vector<double> beta;              // beta after every outer iteration
        std::vector<double> spectral_power;    // ||Theta||_2^2 after every outer iteration
        int descent_iterations = 0;
        bool truncated = false;
    };

    struct SelectionOutcome
    {
        OrthoTarget target;
        CMatrix theta;
        SelectionStatus status = SelectionStatus::needs_amplification;
        double spectral_power = 0.0; // ||theta||_2^2
        SelectionTrace trace;

        bool orthogonalized() const { return status == SelectionStatus::orthogonalized; }
        // beta, or 0 when passive orthogonalization failed
        double gain() const { return orthogonalized() ? target.beta : 0.0; }
    };

    struct Gradients
    {
        CMatrix f_prime, g_prime, ratio, fixed_beta; // all M x K, d/dU^*
    };

    enum class DescentObjective
    {
        maximize_ratio, // f^2 / g
        minimize_power  // beta g - 2 sqrt(beta) f + kappa at fixed beta
    };

    struct DescentResult
    {
        CMatrix U;
        std::vector<double> objective; // per accepted iterate, starting at U0
        int iterations = 0;
        bool truncated = false;
    };

    struct BetaSearch
    {
        double beta = 0.0;
        std::vector<double> spectral_power; // ||Theta(beta_i)||_2^2, i >= 1
        int iterations = 0;
    };

    struct BetaOpt
    {
        double beta = 0.0;
        CMatrix U;          // input U, negated if f(U) < 0
        bool flipped = false;
    };

} // namespace orthoris

namespace orthoris::selection
{
    double frobenius_power(double beta, const CMatrix &U, const CostCoefficients &c);

    // sqrt(beta) = f / g, with the sign of f absorbed into U. Throws
    // Errc::degenerate when g(U) == 0.
    BetaOpt beta_opt(const CMatrix &U, const CostCoefficients &c);

    // Largest beta with ||Theta(beta, U)||_2 <= 1 when H0 = 0 (pure scaling).
    double boundary_beta_blocked(const CMatrix &U, const CostCoefficients &c);

    // U from the projection of unvec(v_min + h0), v_min the right singular
    // vector of the lift for its smallest singular value. beta from beta_opt,
    // or the passivity boundary when H0 = 0. Falls back to the top-K identity
    // block when the projection is degenerate.
    OrthoTarget heuristic_init(const CostCoefficients &c);

    // Wirtinger gradients d/dU^*.
    Gradients gradients(const CMatrix &U, double beta, const CostCoefficients &c);

    // Geodesic steepest descent/ascent on the Stiefel manifold, Armijo steps.
    DescentResult riemannian_descent(DescentObjective objective, const CMatrix &U0, const CostCoefficients &c,
                                     double beta, const DescentOptions &opts = {});

    // Spectral-norm fixed point: x_i = top right singular vector of Theta(beta_i),
    // sqrt(beta_{i+1}) = largest root of ||Theta(beta) x_i||^2 = 1. Requires
    // ||Theta(beta0)||_2^2 <= 1. The returned beta satisfies ||Theta||_2^2 <= 1
    // within 1e-9 of the boundary (final bisection on the convex map
    // sqrt(beta) -> ||Theta||_2).
    BetaSearch maximize_beta_fixed_U(const CMatrix &U, const CostCoefficients &c, double beta0);

    // Haar-distributed semi-unitary M x K.
    CMatrix random_semi_unitary(Index M, Index K, std::mt19937_64 &rng);

    SelectionOutcome select_channel(const EffectiveMap &map, const CMatrix &H0, const SelectionOptions &opts = {});
    SelectionOutcome select_channel(RsKind kind, const ChannelTriple &channels, const SelectionOptions &opts = {});

} // namespace orthoris::selection
