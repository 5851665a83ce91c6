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

// Pilot-based estimation of the direct channel and the effective map.
// UEs send K orthogonal pilots P (K x K, P P^H = Es I) per slot; the BS
// correlates with P^H / Es.

namespace orthoris
{
    struct PilotMatrix
    {
        CMatrix P;
        double energy = 1.0;

        // sqrt(Es) times the unitary DFT matrix
        static PilotMatrix dft(Index K, double energy = 1.0);

        // ||P P^H - Es I||_F
        double orthogonality_defect() const;
    };

    enum class BasisMode
    {
        full,   // every free variable of the kind
        reduced // MK variables (reduced_layout)
    };

    struct EstimationResult
    {
        CMatrix H0_hat;        // M x K
        CMatrix effective_hat; // MK x d, same column order as the layout
        VariableLayout layout;
        RsKind kind = RsKind::fris;
        int steps_used = 0;
        double noise_power = 0.0;

        EffectiveMap to_map() const;
    };

} // namespace orthoris

namespace orthoris::estimation
{
    // Theta = 0 slot: H0_hat = (H0 P + N) P^H / Es, N element-IID CN(0, N0).
    CMatrix estimate_direct(const ChannelTriple &channels, const PilotMatrix &pilots, double noise_power,
                            std::mt19937_64 &rng);

    VariableLayout basis_layout(RsKind kind, Index M, Index K, Index N, BasisMode mode);

    // One configuration per layout variable: Theta = sum of E_p over its
    // positions (entries 1, so every step is passive).
    std::vector<CMatrix> basis_sequence(const VariableLayout &layout);
    std::vector<CMatrix> basis_sequence(RsKind kind, Index M, Index K, Index N, BasisMode mode);

    // Step n configures basis_sequence[n] and records
    //     coefficient_n * vec(Y_n P^H / Es - H0_hat),
    // Y_n = H0 P + H1 Theta_n H2 P + N_n. The layout coefficient (2 on the
    // BD-RIS diagonal) makes noiseless columns equal build_effective_map's.
    EstimationResult estimate_effective_map(const VariableLayout &layout, const ChannelTriple &channels,
                                            const CMatrix &H0_hat, const PilotMatrix &pilots, double noise_power,
                                            std::mt19937_64 &rng);
    EstimationResult estimate_effective_map(RsKind kind, const ChannelTriple &channels, const CMatrix &H0_hat,
                                            const PilotMatrix &pilots, double noise_power, std::mt19937_64 &rng,
                                            BasisMode mode = BasisMode::full);

    // Pilot slots for the effective map (the Theta = 0 slot not included):
    // full: aris N, fris N^2, bdris N(N+1)/2; reduced: MK.
    Index pilot_budget(RsKind kind, Index M, Index K, Index N, BasisMode mode);

} // namespace orthoris::estimation
