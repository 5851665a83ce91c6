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

#include <span>

#include "orthoris/types.hpp"

// Complex double kernels used on the selection hot path (quadratic forms,
// lift * vector products). Each kernel has a scalar reference and an AVX2+FMA
// variant; the dispatching entry points pick one at first use.
//
// Matrices are column-major with leading dimension == rows, which is the
// layout of Eigen::MatrixXcd, so `A.data()` can be passed straight in.

namespace orthoris::kernels
{
    enum class Isa
    {
        scalar,
        avx2
    };

    const char *to_string(Isa isa);

    // True if this build contains AVX2 code and the CPU supports AVX2 and FMA.
    bool avx2_available();

    // Kernel set picked at first use: AVX2 when available, unless the
    // ORTHORIS_ISA environment variable is set to "scalar".
    Isa active_isa();

    namespace scalar
    {
        // y = A x, A is rows x cols
        void matvec(std::span<const cplx> A, Index rows, Index cols, std::span<const cplx> x, std::span<cplx> y);
        // u^H v
        cplx dot(std::span<const cplx> u, std::span<const cplx> v);
        // sum |u_i|^2
        double squared_norm(std::span<const cplx> u);
    } // namespace scalar

    namespace avx2
    {
        void matvec(std::span<const cplx> A, Index rows, Index cols, std::span<const cplx> x, std::span<cplx> y);
        cplx dot(std::span<const cplx> u, std::span<const cplx> v);
        double squared_norm(std::span<const cplx> u);
    } // namespace avx2

    void matvec(std::span<const cplx> A, Index rows, Index cols, std::span<const cplx> x, std::span<cplx> y);
    cplx dot(std::span<const cplx> u, std::span<const cplx> v);
    double squared_norm(std::span<const cplx> u);

    // Eigen conveniences over the dispatched kernels.
    CVector matvec(const CMatrix &A, const CVector &x);
    cplx dot(const CVector &u, const CVector &v);

    // u^H G u for Hermitian G (imaginary round-off dropped).
    double hermitian_form(const CMatrix &G, const CVector &u);

} // namespace orthoris::kernels
