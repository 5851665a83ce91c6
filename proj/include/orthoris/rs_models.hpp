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

#include <string>
#include <string_view>

#include "orthoris/types.hpp"

namespace orthoris
{
    // Reflection-matrix models, from most to least restricted:
    //   ris   - diagonal, unit-modulus entries
    //   aris  - diagonal, |alpha_i|^2 <= 1
    //   bdris - symmetric, ||Theta||_2^2 <= 1
    //   fris  - ||Theta||_2^2 <= 1
    enum class RsKind
    {
        ris,
        aris,
        bdris,
        fris
    };

    std::string to_string(RsKind kind);
    RsKind parse_rs_kind(std::string_view name);

    struct ConstraintReport
    {
        // Theta belongs to the constraint set of the kind (structure and passivity).
        bool structure_ok = false;
        // 1 - ||Theta||_2^2 (1 - max |Theta_ii|^2 for the diagonal kinds); negative if violated.
        double passivity_margin = 0.0;
        double symmetry_defect = 0.0;    // ||Theta - Theta^T||_F
        double diagonality_defect = 0.0; // ||offdiag(Theta)||_F
        double modulus_defect = 0.0;     // max_i ||Theta_ii| - 1|, only meaningful for ris

        bool passive(double tol = 0.0) const { return passivity_margin >= -tol; }
    };

} // namespace orthoris

namespace orthoris::rs
{
    inline constexpr double structure_tolerance = 1e-9;

    ConstraintReport check(const CMatrix &theta, RsKind kind, double tol = structure_tolerance);

    // Theta = (Z + I)^-1 (Z - I). Throws Errc::map_undefined if Z + I is singular.
    CMatrix impedance_to_reflection(const CMatrix &Z);

    // Z = (I + Theta)(I - Theta)^-1. Throws Errc::map_undefined if I - Theta is singular.
    CMatrix reflection_to_impedance(const CMatrix &theta);

} // namespace orthoris::rs
