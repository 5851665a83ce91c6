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


#include <cstdlib>
#include <cstring>

#include "orthoris/kernels.hpp"

namespace orthoris::kernels
{
    namespace
    {
        struct KernelTable
        {
            Isa isa;
            void (*matvec)(std::span<const cplx>, Index, Index, std::span<const cplx>, std::span<cplx>);
            cplx (*dot)(std::span<const cplx>, std::span<const cplx>);
            double (*squared_norm)(std::span<const cplx>);
        };

        KernelTable pick()
        {
            const char *req = std::getenv("ORTHORIS_ISA");
            const bool force_scalar = req != nullptr && std::strcmp(req, "scalar") == 0;
            if (!force_scalar && avx2_available())
                return {Isa::avx2, &avx2::matvec, &avx2::dot, &avx2::squared_norm};
            return {Isa::scalar, &scalar::matvec, &scalar::dot, &scalar::squared_norm};
        }

        // Initialized once (thread-safe static), read-only afterwards.
        const KernelTable &table()
        {
            static const KernelTable t = pick();
            return t;
        }
    } // namespace

    const char *to_string(Isa isa)
    {
        return isa == Isa::avx2 ? "avx2" : "scalar";
    }

    bool avx2_available()
    {
#if defined(ORTHORIS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }

    Isa active_isa()
    {
        return table().isa;
    }

    void matvec(std::span<const cplx> A, Index rows, Index cols, std::span<const cplx> x, std::span<cplx> y)
    {
        table().matvec(A, rows, cols, x, y);
    }

    cplx dot(std::span<const cplx> u, std::span<const cplx> v)
    {
        return table().dot(u, v);
    }

    double squared_norm(std::span<const cplx> u)
    {
        return table().squared_norm(u);
    }

    CVector matvec(const CMatrix &A, const CVector &x)
    {
        if (A.cols() != x.size())
            throw Error(Errc::dimension_mismatch, "matvec: A.cols() != x.size()");
        CVector y(A.rows());
        matvec(std::span<const cplx>(A.data(), std::size_t(A.size())), A.rows(), A.cols(),
               std::span<const cplx>(x.data(), std::size_t(x.size())), std::span<cplx>(y.data(), std::size_t(y.size())));
        return y;
    }

    cplx dot(const CVector &u, const CVector &v)
    {
        if (u.size() != v.size())
            throw Error(Errc::dimension_mismatch, "dot: size mismatch");
        return dot(std::span<const cplx>(u.data(), std::size_t(u.size())),
                   std::span<const cplx>(v.data(), std::size_t(v.size())));
    }

    double hermitian_form(const CMatrix &G, const CVector &u)
    {
        return dot(u, matvec(G, u)).real();
    }

} // namespace orthoris::kernels
