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


#include "orthoris/rs_models.hpp"

#include <algorithm>
#include <cmath>

#include "orthoris/matcore.hpp"

namespace orthoris
{
    std::string to_string(RsKind kind)
    {
        switch (kind)
        {
        case RsKind::ris:
            return "ris";
        case RsKind::aris:
            return "aris";
        case RsKind::bdris:
            return "bdris";
        case RsKind::fris:
            return "fris";
        }
        return "unknown";
    }

    RsKind parse_rs_kind(std::string_view name)
    {
        std::string s(name);
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
        s.erase(std::remove(s.begin(), s.end(), '-'), s.end());
        if (s == "ris")
            return RsKind::ris;
        if (s == "aris")
            return RsKind::aris;
        if (s == "bdris")
            return RsKind::bdris;
        if (s == "fris")
            return RsKind::fris;
        throw Error(Errc::invalid_argument, "unknown RS kind '" + std::string(name) + "'");
    }
} // namespace orthoris

namespace orthoris::rs
{
    ConstraintReport check(const CMatrix &theta, RsKind kind, double tol)
    {
        if (theta.rows() != theta.cols())
            throw Error(Errc::dimension_mismatch, "check: reflection matrix must be square");

        ConstraintReport r;
        r.symmetry_defect = (theta - theta.transpose()).norm();

        CMatrix off = theta;
        off.diagonal().setZero();
        r.diagonality_defect = off.norm();

        double max_mod2 = 0.0;
        r.modulus_defect = 0.0;
        for (Index i = 0; i < theta.rows(); ++i)
        {
            const double m = std::abs(theta(i, i));
            max_mod2 = std::max(max_mod2, m * m);
            r.modulus_defect = std::max(r.modulus_defect, std::abs(m - 1.0));
        }

        const bool diagonal_kind = kind == RsKind::ris || kind == RsKind::aris;
        if (diagonal_kind)
            r.passivity_margin = 1.0 - max_mod2;
        else
        {
            const double s = matcore::spectral_norm(theta);
            r.passivity_margin = 1.0 - s * s;
        }

        // closed set: the boundary ||Theta||_2 = 1 is feasible
        const bool passive = r.passivity_margin >= -tol;
        switch (kind)
        {
        case RsKind::ris:
            r.structure_ok = r.diagonality_defect <= tol && r.modulus_defect <= tol;
            break;
        case RsKind::aris:
            r.structure_ok = r.diagonality_defect <= tol && passive;
            break;
        case RsKind::bdris:
            r.structure_ok = r.symmetry_defect <= tol && passive;
            break;
        case RsKind::fris:
            r.structure_ok = passive;
            break;
        }
        return r;
    }

    namespace
    {
        // M^-1 via full-pivot LU; rejects numerically singular inputs
        CMatrix checked_inverse(const CMatrix &M, const char *what)
        {
            Eigen::FullPivLU<CMatrix> lu(M);
            lu.setThreshold(1e-13);
            if (!lu.isInvertible())
                throw Error(Errc::map_undefined, what);
            return lu.inverse();
        }
    } // namespace

    CMatrix impedance_to_reflection(const CMatrix &Z)
    {
        if (Z.rows() != Z.cols())
            throw Error(Errc::dimension_mismatch, "impedance_to_reflection: Z must be square");
        const CMatrix I = CMatrix::Identity(Z.rows(), Z.cols());
        return checked_inverse(Z + I, "impedance_to_reflection: Z + I is singular") * (Z - I);
    }

    CMatrix reflection_to_impedance(const CMatrix &theta)
    {
        if (theta.rows() != theta.cols())
            throw Error(Errc::dimension_mismatch, "reflection_to_impedance: Theta must be square");
        const CMatrix I = CMatrix::Identity(theta.rows(), theta.cols());
        return (I + theta) * checked_inverse(I - theta, "reflection_to_impedance: I - Theta is singular (open-circuit limit)");
    }

} // namespace orthoris::rs
