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


#include "orthoris/kernels.hpp"

namespace orthoris::kernels::scalar
{
    void matvec(std::span<const cplx> A, Index rows, Index cols, std::span<const cplx> x, std::span<cplx> y)
    {
        for (Index i = 0; i < rows; ++i)
            y[i] = cplx(0.0, 0.0);

        for (Index j = 0; j < cols; ++j)
        {
            const double xr = x[j].real(), xi = x[j].imag();
            const cplx *col = A.data() + j * rows;
            for (Index i = 0; i < rows; ++i)
            {
                const double ar = col[i].real(), ai = col[i].imag();
                y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
            }
        }
    }

    cplx dot(std::span<const cplx> u, std::span<const cplx> v)
    {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
        {
            // conj(u) * v
            re += u[i].real() * v[i].real() + u[i].imag() * v[i].imag();
            im += u[i].real() * v[i].imag() - u[i].imag() * v[i].real();
        }
        return {re, im};
    }

    double squared_norm(std::span<const cplx> u)
    {
        double acc = 0.0;
        for (const cplx &z : u)
            acc += z.real() * z.real() + z.imag() * z.imag();
        return acc;
    }

} // namespace orthoris::kernels::scalar
