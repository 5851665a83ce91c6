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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace orthoris
{
    using cplx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RMatrix = Eigen::MatrixXd;
    using RVector = Eigen::VectorXd;
    using Index = Eigen::Index;

    enum class Errc
    {
        dimension_mismatch,   // operand shapes do not conform
        degenerate,           // projection / ratio not defined (rank deficiency, zero denominator)
        map_undefined,        // impedance <-> reflection map hits a singular matrix
        infeasible,           // rank-infeasible configuration requested where a solution is required
        iteration_degenerate, // a fixed-point step has no admissible root
        geometry,             // invalid scenario geometry
        invalid_argument      // everything else the caller got wrong
    };

    const char *to_string(Errc code);

    // Single exception type of the library; the code tells callers what failed.
    class Error : public std::runtime_error
    {
    public:
        Error(Errc code, const std::string &what)
            : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
        Errc code() const noexcept { return code_; }

    private:
        Errc code_;
    };

    inline const char *to_string(Errc code)
    {
        switch (code)
        {
        case Errc::dimension_mismatch:
            return "dimension mismatch";
        case Errc::degenerate:
            return "degenerate";
        case Errc::map_undefined:
            return "map undefined";
        case Errc::infeasible:
            return "infeasible";
        case Errc::iteration_degenerate:
            return "iteration degenerate";
        case Errc::geometry:
            return "geometry";
        case Errc::invalid_argument:
            return "invalid argument";
        }
        return "unknown";
    }

} // namespace orthoris
