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


#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "orthoris/cli.hpp"
#include "orthoris/estimation.hpp"
#include "orthoris/kernels.hpp"
#include "orthoris/matcore.hpp"
#include "orthoris/random.hpp"
#include "orthoris/scenarios.hpp"
#include "orthoris/selection.hpp"

namespace orthoris
{
    namespace
    {
        ChannelTriple draw(Index M, Index K, Index N, double eta, std::uint64_t trial)
        {
            std::mt19937_64 g = rng::stream(0x5e1f, trial, 3);
            return scenarios::gen_rayleigh({M, K, N, eta}, g);
        }

        bool kernels_agree()
        {
            std::mt19937_64 g = rng::stream(1, 0, 0);
            const CMatrix A = rng::complex_gaussian(g, 13, 7);
            const CVector x = rng::complex_gaussian(g, 7, 1);
            const CVector y = rng::complex_gaussian(g, 7, 1);
            CVector ref(13);
            kernels::scalar::matvec({A.data(), std::size_t(A.size())}, 13, 7, {x.data(), 7}, {ref.data(), 13});
            const CVector got = kernels::matvec(A, x);
            const cplx d0 = kernels::scalar::dot({x.data(), 7}, {y.data(), 7});
            return (got - ref).norm() <= 1e-12 * ref.norm() && std::abs(kernels::dot(x, y) - d0) <= 1e-12 * std::abs(d0);
        }

        bool solvers_exact()
        {
            for (RsKind kind : {RsKind::aris, RsKind::bdris, RsKind::fris})
                for (std::uint64_t t = 0; t < 20; ++t)
                {
                    const ChannelTriple ch = draw(4, 2, solvers::min_elements(kind, 4, 2), 1.0, t);
                    std::mt19937_64 g = rng::stream(2, t, 0);
                    const CMatrix target = rng::complex_gaussian(g, 4, 2);
                    if (solvers::solve(kind, ch, target).residual > 1e-8 * target.norm())
                        return false;
                }
            return true;
        }

        bool bounds_sharp()
        {
            for (RsKind kind : {RsKind::aris, RsKind::bdris})
                for (std::uint64_t t = 0; t < 20; ++t)
                {
                    const ChannelTriple ch = draw(4, 2, solvers::min_elements(kind, 4, 2) - 1, 1.0, t);
                    if (solvers::rank_feasible(kind, ch.H1, ch.H2))
                        return false;
                }
            return true;
        }

        bool blocked_feasible()
        {
            for (RsKind kind : {RsKind::aris, RsKind::bdris, RsKind::fris})
                for (std::uint64_t t = 0; t < 5; ++t)
                {
                    const ChannelTriple ch = draw(4, 2, solvers::min_elements(kind, 4, 2), 0.0, t);
                    const SelectionOutcome o = selection::select_channel(kind, ch);
                    if (!o.orthogonalized() || !(o.target.beta > 0.0) || o.spectral_power > 1.0 ||
                        o.spectral_power < 1.0 - 1e-6)
                        return false;
                    if (matcore::condition_number(ch.channel(o.theta)) > 1.0 + 1e-6)
                        return false;
                }
            return true;
        }

        bool estimation_exact()
        {
            for (RsKind kind : {RsKind::aris, RsKind::bdris, RsKind::fris})
            {
                const ChannelTriple ch = draw(4, 2, solvers::min_elements(kind, 4, 2), 1.0, 9);
                std::mt19937_64 g(0);
                const PilotMatrix P = PilotMatrix::dft(2, 1.0);
                const CMatrix H0_hat = estimation::estimate_direct(ch, P, 0.0, g);
                const EstimationResult r = estimation::estimate_effective_map(kind, ch, H0_hat, P, 0.0, g);
                const EffectiveMap exact = solvers::build_effective_map(kind, ch.H1, ch.H2);
                if ((r.effective_hat - exact.matrix).norm() > 1e-10 * exact.matrix.norm())
                    return false;
            }
            return true;
        }

        bool budgets()
        {
            using estimation::pilot_budget;
            return pilot_budget(RsKind::aris, 8, 4, 32, BasisMode::full) == 32 &&
                   pilot_budget(RsKind::fris, 8, 4, 8, BasisMode::full) == 64 &&
                   pilot_budget(RsKind::bdris, 4, 2, 5, BasisMode::full) == 15 &&
                   pilot_budget(RsKind::bdris, 4, 2, 5, BasisMode::reduced) == 8;
        }

        bool impedance_round_trip()
        {
            std::mt19937_64 g = rng::stream(3, 0, 0);
            const CMatrix Z = rng::complex_gaussian(g, 4, 4);
            const CMatrix T = rs::impedance_to_reflection(Z);
            return (rs::reflection_to_impedance(T) - Z).norm() <= 1e-9 * Z.norm();
        }
    } // namespace

    bool run_selftest(std::ostream &out)
    {
        const std::pair<const char *, std::function<bool()>> checks[] = {
            {"kernels scalar/dispatch agreement", kernels_agree},
            {"closed-form solvers at minimum N", solvers_exact},
            {"rank infeasible below minimum N", bounds_sharp},
            {"blocked direct channel orthogonalization", blocked_feasible},
            {"noiseless estimation reproduces the map", estimation_exact},
            {"pilot budgets", budgets},
            {"impedance/reflection round trip", impedance_round_trip},
        };
        out << "kernel isa: " << kernels::to_string(kernels::active_isa()) << "\n";
        bool all = true;
        for (const auto &[name, fn] : checks)
        {
            bool ok = false;
            try
            {
                ok = fn();
            }
            catch (const std::exception &ex)
            {
                out << "  exception: " << ex.what() << "\n";
            }
            out << (ok ? "PASS " : "FAIL ") << name << "\n";
            all = all && ok;
        }
        out << (all ? "selftest passed" : "selftest FAILED") << "\n";
        return all;
    }
} // namespace orthoris
