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


#include "orthoris/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orthoris/kernels.hpp"
#include "orthoris/matcore.hpp"

namespace orthoris
{
    std::string to_string(SelectionMode mode)
    {
        switch (mode)
        {
        case SelectionMode::algorithm1:
            return "algorithm1";
        case SelectionMode::simplified:
            return "simplified";
        case SelectionMode::random:
            return "random";
        }
        return "unknown";
    }

    SelectionMode parse_selection_mode(std::string_view name)
    {
        if (name == "algorithm1")
            return SelectionMode::algorithm1;
        if (name == "simplified")
            return SelectionMode::simplified;
        if (name == "random")
            return SelectionMode::random;
        throw Error(Errc::invalid_argument, "unknown selection mode '" + std::string(name) + "'");
    }

    std::string to_string(SelectionStatus status)
    {
        return status == SelectionStatus::orthogonalized ? "orthogonalized" : "needs-amplification";
    }

    CostCoefficients CostCoefficients::from(const CMatrix &lift, const CMatrix &H0, Index N)
    {
        if (lift.rows() != N * N || lift.cols() != H0.size())
            throw Error(Errc::dimension_mismatch, "cost coefficients: lift must be N^2 x MK");

        CostCoefficients c;
        c.M = H0.rows();
        c.K = H0.cols();
        c.N = N;
        c.lift = lift;
        c.G = lift.adjoint() * lift;
        c.G = 0.5 * (c.G + c.G.adjoint()); // exact Hermitian symmetry
        c.h0 = matcore::vec(H0);
        c.w = kernels::matvec(c.G, c.h0);
        c.kappa = std::max(0.0, kernels::dot(c.h0, c.w).real());
        return c;
    }

    double CostCoefficients::g(const CMatrix &U) const
    {
        return kernels::hermitian_form(G, matcore::vec(U));
    }

    double CostCoefficients::f(const CMatrix &U) const
    {
        return kernels::dot(matcore::vec(U), w).real();
    }

    CMatrix CostCoefficients::theta(double beta, const CMatrix &U) const
    {
        const CVector c = std::sqrt(beta) * matcore::vec(U) - h0;
        return matcore::unvec(kernels::matvec(lift, c), N, N);
    }

    double CostCoefficients::spectral_power(double beta, const CMatrix &U) const
    {
        const double s = matcore::spectral_norm(theta(beta, U));
        return s * s;
    }

} // namespace orthoris

namespace orthoris::selection
{
    double frobenius_power(double beta, const CMatrix &U, const CostCoefficients &c)
    {
        return beta * c.g(U) - 2.0 * std::sqrt(beta) * c.f(U) + c.kappa;
    }

    BetaOpt beta_opt(const CMatrix &U, const CostCoefficients &c)
    {
        const double g = c.g(U);
        if (!(g > 0.0))
            throw Error(Errc::degenerate, "beta_opt: g(U) = 0");
        const double f = c.f(U);

        BetaOpt out;
        out.flipped = f < 0.0;
        out.U = out.flipped ? CMatrix(-U) : U;
        const double root = std::abs(f) / g;
        out.beta = root * root;
        return out;
    }

    double boundary_beta_blocked(const CMatrix &U, const CostCoefficients &c)
    {
        const CMatrix A = matcore::unvec(kernels::matvec(c.lift, matcore::vec(U)), c.N, c.N);
        const double s = matcore::spectral_norm(A);
        if (!(s > 0.0))
            throw Error(Errc::degenerate, "boundary beta: lift annihilates U");
        return 1.0 / (s * s);
    }

    OrthoTarget heuristic_init(const CostCoefficients &c)
    {
        const Index MK = c.M * c.K;
        Eigen::BDCSVD<CMatrix> svd(c.lift, Eigen::ComputeThinV);
        CVector v = svd.matrixV().col(MK - 1);

        // Singular vectors carry an arbitrary phase; pin it so the selection
        // is reproducible: v^H h0 real and non-negative, or (blocked channel)
        // the largest-modulus entry real and positive.
        const cplx overlap = v.dot(c.h0);
        if (std::abs(overlap) > 0.0)
            v *= std::conj(overlap) / std::abs(overlap) * cplx(1.0, 0.0);
        else
        {
            Index imax = 0;
            v.cwiseAbs().maxCoeff(&imax);
            v *= std::conj(v(imax)) / std::abs(v(imax));
        }
        // after the rotation v^H h0 = |overlap| >= 0

        OrthoTarget t;
        try
        {
            t.U = matcore::stiefel_project(matcore::unvec(v + c.h0, c.M, c.K));
        }
        catch (const Error &e)
        {
            if (e.code() != Errc::degenerate)
                throw;
            t.U = CMatrix::Identity(c.M, c.K);
        }

        if (c.direct_blocked())
            t.beta = boundary_beta_blocked(t.U, c);
        else
        {
            const BetaOpt b = beta_opt(t.U, c);
            t.U = b.U;
            t.beta = b.beta;
        }
        return t;
    }

    Gradients gradients(const CMatrix &U, double beta, const CostCoefficients &c)
    {
        const CVector u = matcore::vec(U);
        const double g = kernels::hermitian_form(c.G, u);
        const double f = kernels::dot(u, c.w).real();

        Gradients d;
        // f = (u^H w + w^H u) / 2, g = u^H G u
        d.f_prime = 0.5 * matcore::unvec(c.w, c.M, c.K);
        d.g_prime = matcore::unvec(kernels::matvec(c.G, u), c.M, c.K);
        if (g > 0.0)
            d.ratio = (2.0 * f * g * d.f_prime - f * f * d.g_prime) / (g * g);
        else
            d.ratio = CMatrix::Zero(c.M, c.K);
        d.fixed_beta = beta * d.g_prime - 2.0 * std::sqrt(beta) * d.f_prime;
        return d;
    }

    namespace
    {
        // Objective to minimize and its d/dU^* gradient.
        struct Objective
        {
            DescentObjective kind;
            const CostCoefficients &c;
            double beta;

            double value(const CMatrix &U) const
            {
                if (kind == DescentObjective::minimize_power)
                    return frobenius_power(beta, U, c);
                const double g = c.g(U);
                const double f = c.f(U);
                return g > 0.0 ? -(f * f) / g : 0.0;
            }

            CMatrix gradient(const CMatrix &U) const
            {
                const Gradients d = gradients(U, beta, c);
                return kind == DescentObjective::minimize_power ? d.fixed_beta : CMatrix(-d.ratio);
            }

            // The value reported to callers (ratio objective is maximized).
            double reported(double J) const { return kind == DescentObjective::maximize_ratio ? -J : J; }
        };
    } // namespace

    DescentResult riemannian_descent(DescentObjective objective, const CMatrix &U0, const CostCoefficients &c,
                                     double beta, const DescentOptions &opts)
    {
        const Objective obj{objective, c, beta};
        const Index M = U0.rows();

        DescentResult out;
        out.U = U0;
        double J = obj.value(out.U);
        out.objective.push_back(obj.reported(J));

        double step = opts.initial_step;
        for (int it = 0; it < opts.max_iterations; ++it)
        {
            const CMatrix Gamma = obj.gradient(out.U);
            // Riemannian gradient of the extended unitary [U, U_perp]; the
            // padding columns have zero Euclidean gradient.
            const CMatrix Gr = Gamma * out.U.adjoint() - out.U * Gamma.adjoint();
            const double gn2 = Gr.squaredNorm();
            if (!(gn2 > opts.gradient_tolerance * std::max(1.0, std::abs(J))))
                break;

            // exp(-mu Gr) through the eigendecomposition of the Hermitian i*Gr
            CMatrix H = cplx(0.0, 1.0) * Gr;
            H = 0.5 * (H + H.adjoint());
            const Eigen::SelfAdjointEigenSolver<CMatrix> eig(H);
            const CMatrix &V = eig.eigenvectors();
            const RVector &lam = eig.eigenvalues();
            const CMatrix VhU = V.adjoint() * out.U;
            auto rotated = [&](double mu) {
                CVector phase(M);
                for (Index i = 0; i < M; ++i)
                    phase(i) = std::polar(1.0, mu * lam(i));
                return CMatrix(V * (phase.asDiagonal() * VhU));
            };
            auto armijo_ok = [&](double mu, double Jmu) { return Jmu <= J - opts.armijo_slope * mu * gn2; };

            CMatrix U_try = rotated(step);
            double J_try = obj.value(U_try);
            int tries = 0;
            if (armijo_ok(step, J_try))
            {
                // grow while the doubled step still satisfies Armijo and improves
                while (tries < opts.max_backtracks)
                {
                    const double mu2 = 2.0 * step;
                    CMatrix U2 = rotated(mu2);
                    const double J2 = obj.value(U2);
                    if (!armijo_ok(mu2, J2) || J2 > J_try)
                        break;
                    step = mu2;
                    U_try = std::move(U2);
                    J_try = J2;
                    ++tries;
                }
            }
            else
            {
                bool accepted = false;
                while (tries < opts.max_backtracks)
                {
                    step *= opts.backtrack;
                    U_try = rotated(step);
                    J_try = obj.value(U_try);
                    ++tries;
                    if (armijo_ok(step, J_try))
                    {
                        accepted = true;
                        break;
                    }
                }
                if (!accepted)
                    break; // no admissible step: numerically stationary
            }

            const double decrease = J - J_try;
            out.U = std::move(U_try);
            J = J_try;
            out.objective.push_back(obj.reported(J));
            ++out.iterations;

            if (matcore::semi_unitary_defect(out.U) > opts.orthonormality_drift)
                out.U = matcore::stiefel_project(out.U);

            if (decrease <= opts.relative_decrease_tolerance * std::max(1.0, std::abs(J)))
                break;
            if (it + 1 == opts.max_iterations)
                out.truncated = true;
        }
        return out;
    }

    namespace
    {
        struct AffineTheta
        {
            CMatrix A, B; // Theta(s) = s A - B

            AffineTheta(const CMatrix &U, const CostCoefficients &c)
                : A(matcore::unvec(kernels::matvec(c.lift, matcore::vec(U)), c.N, c.N)),
                  B(matcore::unvec(kernels::matvec(c.lift, c.h0), c.N, c.N)) {}

            CMatrix at(double s) const { return s * A - B; }
            double power(double s) const
            {
                const double n = matcore::spectral_norm(at(s));
                return n * n;
            }
        };

        // From s_hi just above the upper end of {s : ||Theta(s)||_2 <= 1}, walk
        // back to a feasible point within 1e-9 of the boundary.
        double settle_on_boundary(const AffineTheta &th, double s_hi)
        {
            double hi = s_hi;
            double lo = -1.0;
            for (double delta = 1e-15; delta < 1.0; delta *= 10.0)
            {
                const double s = s_hi * (1.0 - delta);
                if (th.power(s) <= 1.0)
                {
                    lo = s;
                    break;
                }
                hi = s;
            }
            if (lo < 0.0)
                throw Error(Errc::iteration_degenerate, "beta search: no feasible point below the fixed point");

            for (int k = 0; k < 100 && th.power(lo) < 1.0 - 1e-9; ++k)
            {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                if (th.power(mid) <= 1.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return lo;
        }
    } // namespace

    BetaSearch maximize_beta_fixed_U(const CMatrix &U, const CostCoefficients &c, double beta0)
    {
        if (!(beta0 >= 0.0))
            throw Error(Errc::invalid_argument, "maximize_beta_fixed_U: beta0 must be >= 0");
        const AffineTheta th(U, c);

        double s = std::sqrt(beta0);
        const double v0 = th.power(s);
        if (v0 > 1.0 + 1e-9)
            throw Error(Errc::invalid_argument, "maximize_beta_fixed_U: ||Theta(beta0)||_2^2 > 1");

        BetaSearch out;
        for (int it = 0; it < 500; ++it)
        {
            const matcore::TopSingular top = matcore::top_singular(th.at(s));
            const CVector Ax = th.A * top.right;
            const CVector Bx = th.B * top.right;
            const double a = Ax.squaredNorm();
            const double b = Ax.dot(Bx).real();
            const double cc = Bx.squaredNorm();
            // a s^2 - 2 b s + cc - 1 = 0
            const double disc = b * b - a * (cc - 1.0);
            if (!(a > 0.0) || disc < 0.0)
                throw Error(Errc::iteration_degenerate, "maximize_beta_fixed_U: quadratic has no real root");
            const double s_next = (b + std::sqrt(disc)) / a;
            if (!(s_next > 0.0))
                throw Error(Errc::iteration_degenerate, "maximize_beta_fixed_U: no positive root");

            const double v = th.power(s_next);
            out.spectral_power.push_back(v);
            ++out.iterations;

            const bool small_step = std::abs(s_next - s) <= 1e-13 * std::max(s, s_next);
            s = s_next;
            if (small_step || v - 1.0 <= 1e-13)
                break;
        }

        if (th.power(s) > 1.0)
            s = settle_on_boundary(th, s);
        out.beta = s * s;
        return out;
    }

    CMatrix random_semi_unitary(Index M, Index K, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> g(0.0, 1.0);
        CMatrix A(M, K);
        for (Index i = 0; i < A.size(); ++i)
            A.data()[i] = cplx(g(rng), g(rng));
        // polar factor of a complex Gaussian matrix is Haar distributed
        return matcore::stiefel_project(A);
    }

    SelectionOutcome select_channel(const EffectiveMap &map, const CMatrix &H0, const SelectionOptions &opts)
    {
        if (H0.rows() != map.M || H0.cols() != map.K)
            throw Error(Errc::dimension_mismatch, "select_channel: H0 does not match the effective map");
        if (!map.rank_feasible())
            throw Error(Errc::infeasible, "select_channel: effective map has rank " + std::to_string(map.rank) +
                                              " < MK = " + std::to_string(map.M * map.K));
        if (map.K > map.M)
            throw Error(Errc::invalid_argument, "select_channel: orthogonal channels need M >= K");

        const CostCoefficients c = CostCoefficients::from(map.lift, H0, map.N);
        const bool blocked = c.direct_blocked();
        SelectionOutcome out;

        // RS power minimization for initialization
        OrthoTarget t;
        if (opts.mode == SelectionMode::random)
        {
            std::mt19937_64 rng(opts.random_seed);
            t.U = random_semi_unitary(map.M, map.K, rng);
            if (blocked)
                t.beta = boundary_beta_blocked(t.U, c);
            else
            {
                const BetaOpt b = beta_opt(t.U, c);
                t.U = b.U;
                t.beta = b.beta;
            }
        }
        else
            t = heuristic_init(c);

        double power = c.spectral_power(t.beta, t.U);
        if (power > 1.0 + opts.passivity_slack && opts.mode == SelectionMode::algorithm1 && !blocked)
        {
            DescentResult d = riemannian_descent(DescentObjective::maximize_ratio, t.U, c, 0.0, opts.descent);
            out.trace.ratio_objective = d.objective;
            out.trace.descent_iterations += d.iterations;
            out.trace.truncated = out.trace.truncated || d.truncated;
            const BetaOpt b = beta_opt(d.U, c);
            t.U = b.U;
            t.beta = b.beta;
            power = c.spectral_power(t.beta, t.U);
        }

        if (power > 1.0 + opts.passivity_slack)
        {
            out.target = t;
            out.theta = c.theta(t.beta, t.U);
            out.spectral_power = power;
            out.status = SelectionStatus::needs_amplification;
            return out;
        }

        // Channel gain maximization
        BetaSearch bs = maximize_beta_fixed_U(t.U, c, t.beta);
        t.beta = bs.beta;
        out.trace.beta.push_back(t.beta);
        out.trace.spectral_power.push_back(c.spectral_power(t.beta, t.U));

        if (opts.mode == SelectionMode::algorithm1)
        {
            for (int outer = 0; outer < opts.max_outer_iterations; ++outer)
            {
                DescentResult d = riemannian_descent(DescentObjective::minimize_power, t.U, c, t.beta, opts.descent);
                out.trace.descent_iterations += d.iterations;
                out.trace.truncated = out.trace.truncated || d.truncated;
                out.trace.power_objective.push_back(d.objective.back());

                // the Frobenius relaxation can raise the spectral norm; keep U then
                if (c.spectral_power(t.beta, d.U) > 1.0)
                    break;

                bs = maximize_beta_fixed_U(d.U, c, t.beta);
                const double change = std::abs(bs.beta - t.beta);
                t.U = std::move(d.U);
                t.beta = bs.beta;
                out.trace.beta.push_back(t.beta);
                out.trace.spectral_power.push_back(c.spectral_power(t.beta, t.U));
                if (change <= opts.beta_tolerance * t.beta)
                    break;
                if (outer + 1 == opts.max_outer_iterations)
                    out.trace.truncated = true;
            }
        }

        // trim rounding so the reported power is <= 1 on this evaluation path
        double sp = c.spectral_power(t.beta, t.U);
        for (int k = 0; k < 40 && sp > 1.0 && sp <= 1.0 + opts.passivity_slack; ++k)
        {
            t.beta *= 1.0 - std::ldexp(4.0 * std::numeric_limits<double>::epsilon(), k);
            sp = c.spectral_power(t.beta, t.U);
        }

        out.target = t;
        out.theta = c.theta(t.beta, t.U);
        out.spectral_power = sp;
        out.status = out.spectral_power <= 1.0 + opts.passivity_slack ? SelectionStatus::orthogonalized
                                                                       : SelectionStatus::needs_amplification;
        return out;
    }

    SelectionOutcome select_channel(RsKind kind, const ChannelTriple &channels, const SelectionOptions &opts)
    {
        channels.validate();
        return select_channel(solvers::build_effective_map(kind, channels.H1, channels.H2), channels.H0, opts);
    }

} // namespace orthoris::selection
