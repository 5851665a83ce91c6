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


#include "orthoris/estimation.hpp"

#include <cmath>
#include <numbers>

#include "orthoris/matcore.hpp"
#include "orthoris/random.hpp"

namespace orthoris
{
    PilotMatrix PilotMatrix::dft(Index K, double energy)
    {
        if (K < 1 || !(energy > 0.0))
            throw Error(Errc::invalid_argument, "pilot matrix: need K >= 1 and Es > 0");
        PilotMatrix p;
        p.energy = energy;
        p.P.resize(K, K);
        const double scale = std::sqrt(energy / double(K));
        for (Index a = 0; a < K; ++a)
            for (Index b = 0; b < K; ++b)
                p.P(a, b) = std::polar(scale, -2.0 * std::numbers::pi * double((a * b) % K) / double(K));
        return p;
    }

    double PilotMatrix::orthogonality_defect() const
    {
        return (P * P.adjoint() - energy * CMatrix::Identity(P.rows(), P.rows())).norm();
    }

    EffectiveMap EstimationResult::to_map() const
    {
        return EffectiveMap::from_matrix(kind, H0_hat.rows(), H0_hat.cols(), layout, effective_hat);
    }
} // namespace orthoris

namespace orthoris::estimation
{
    namespace
    {
        void check_pilots(const ChannelTriple &channels, const PilotMatrix &pilots, double noise_power)
        {
            channels.validate();
            if (pilots.P.rows() != channels.K() || pilots.P.cols() != channels.K())
                throw Error(Errc::dimension_mismatch, "estimation: pilot matrix must be K x K");
            if (!(noise_power >= 0.0))
                throw Error(Errc::invalid_argument, "estimation: noise power must be >= 0");
        }

        CMatrix noise(std::mt19937_64 &rng, Index M, Index K, double noise_power)
        {
            if (noise_power == 0.0)
                return CMatrix::Zero(M, K);
            return rng::complex_gaussian(rng, M, K, noise_power);
        }
    } // namespace

    CMatrix estimate_direct(const ChannelTriple &channels, const PilotMatrix &pilots, double noise_power,
                            std::mt19937_64 &rng)
    {
        check_pilots(channels, pilots, noise_power);
        const CMatrix Y = channels.H0 * pilots.P + noise(rng, channels.M(), channels.K(), noise_power);
        return Y * pilots.P.adjoint() / pilots.energy;
    }

    VariableLayout basis_layout(RsKind kind, Index M, Index K, Index N, BasisMode mode)
    {
        return mode == BasisMode::full ? full_layout(kind, N) : reduced_layout(kind, M, K, N);
    }

    std::vector<CMatrix> basis_sequence(const VariableLayout &layout)
    {
        std::vector<CMatrix> seq;
        seq.reserve(layout.variables.size());
        for (const FreeVariable &v : layout.variables)
        {
            CMatrix T = CMatrix::Zero(layout.N, layout.N);
            for (Index p : v.positions)
                T(p % layout.N, p / layout.N) = 1.0;
            seq.push_back(std::move(T));
        }
        return seq;
    }

    std::vector<CMatrix> basis_sequence(RsKind kind, Index M, Index K, Index N, BasisMode mode)
    {
        return basis_sequence(basis_layout(kind, M, K, N, mode));
    }

    EstimationResult estimate_effective_map(const VariableLayout &layout, const ChannelTriple &channels,
                                            const CMatrix &H0_hat, const PilotMatrix &pilots, double noise_power,
                                            std::mt19937_64 &rng)
    {
        check_pilots(channels, pilots, noise_power);
        if (layout.N != channels.N())
            throw Error(Errc::dimension_mismatch, "estimate_effective_map: layout N does not match the channels");
        if (H0_hat.rows() != channels.M() || H0_hat.cols() != channels.K())
            throw Error(Errc::dimension_mismatch, "estimate_effective_map: H0_hat must be M x K");

        const Index M = channels.M(), K = channels.K();
        const std::vector<CMatrix> configs = basis_sequence(layout);

        EstimationResult r;
        r.kind = layout.kind;
        r.layout = layout;
        r.H0_hat = H0_hat;
        r.noise_power = noise_power;
        r.effective_hat.resize(M * K, layout.size());

        const CMatrix H0P = channels.H0 * pilots.P;
        const CMatrix H2P = channels.H2 * pilots.P;
        const CMatrix Ph = pilots.P.adjoint() / pilots.energy;
        for (Index n = 0; n < layout.size(); ++n)
        {
            const CMatrix Y = H0P + channels.H1 * configs[std::size_t(n)] * H2P + noise(rng, M, K, noise_power);
            const CMatrix response = Y * Ph - H0_hat;
            r.effective_hat.col(n) = layout.variables[std::size_t(n)].coefficient * matcore::vec(response);
            ++r.steps_used;
        }
        return r;
    }

    EstimationResult estimate_effective_map(RsKind kind, const ChannelTriple &channels, const CMatrix &H0_hat,
                                            const PilotMatrix &pilots, double noise_power, std::mt19937_64 &rng,
                                            BasisMode mode)
    {
        channels.validate();
        return estimate_effective_map(basis_layout(kind, channels.M(), channels.K(), channels.N(), mode), channels,
                                      H0_hat, pilots, noise_power, rng);
    }

    Index pilot_budget(RsKind kind, Index M, Index K, Index N, BasisMode mode)
    {
        if (M < 1 || K < 1 || N < 1)
            throw Error(Errc::invalid_argument, "pilot_budget: M, K, N must be >= 1");
        if (mode == BasisMode::reduced)
            return std::min(M * K, full_layout(kind, N).size());
        switch (kind)
        {
        case RsKind::ris:
        case RsKind::aris:
            return N;
        case RsKind::fris:
            return N * N;
        case RsKind::bdris:
            return N * (N + 1) / 2;
        }
        return 0;
    }

} // namespace orthoris::estimation
