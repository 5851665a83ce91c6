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

#if defined(ORTHORIS_HAVE_AVX2)
#include <immintrin.h>
#endif

// One __m256d holds two interleaved complex doubles [re0 im0 re1 im1].

namespace orthoris::kernels::avx2
{
#if defined(ORTHORIS_HAVE_AVX2)

    namespace
    {
        inline double hsum(__m256d v)
        {
            const __m128d lo = _mm256_castpd256_pd128(v);
            const __m128d hi = _mm256_extractf128_pd(v, 1);
            const __m128d s = _mm_add_pd(lo, hi);
            return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
        }
    } // namespace

    void matvec(std::span<const cplx> A, Index rows, Index cols, std::span<const cplx> x, std::span<cplx> y)
    {
        double *yd = reinterpret_cast<double *>(y.data());
        const double *Ad = reinterpret_cast<const double *>(A.data());
        const Index pairs = rows / 2;

        for (Index i = 0; i < rows; ++i)
            y[i] = cplx(0.0, 0.0);

        for (Index j = 0; j < cols; ++j)
        {
            const __m256d xr = _mm256_set1_pd(x[j].real());
            const __m256d xi = _mm256_set1_pd(x[j].imag());
            const double *col = Ad + 2 * j * rows;

            for (Index p = 0; p < pairs; ++p)
            {
                const __m256d a = _mm256_loadu_pd(col + 4 * p);
                const __m256d acc = _mm256_loadu_pd(yd + 4 * p);
                // [ai ar ...] * xi, then a*xr -/+ that in even/odd lanes
                const __m256d t = _mm256_mul_pd(_mm256_permute_pd(a, 0b0101), xi);
                const __m256d prod = _mm256_fmaddsub_pd(a, xr, t);
                _mm256_storeu_pd(yd + 4 * p, _mm256_add_pd(acc, prod));
            }
            if (rows % 2)
            {
                const Index i = rows - 1;
                const double ar = col[2 * i], ai = col[2 * i + 1];
                y[i] += cplx(ar * x[j].real() - ai * x[j].imag(), ar * x[j].imag() + ai * x[j].real());
            }
        }
    }

    cplx dot(std::span<const cplx> u, std::span<const cplx> v)
    {
        const double *ud = reinterpret_cast<const double *>(u.data());
        const double *vd = reinterpret_cast<const double *>(v.data());
        const std::size_t n = u.size();
        const std::size_t pairs = n / 2;

        __m256d acc_re = _mm256_setzero_pd(); // [ur vr, ui vi, ...]
        __m256d acc_im = _mm256_setzero_pd(); // [ur vi, ui vr, ...]
        for (std::size_t p = 0; p < pairs; ++p)
        {
            const __m256d a = _mm256_loadu_pd(ud + 4 * p);
            const __m256d b = _mm256_loadu_pd(vd + 4 * p);
            acc_re = _mm256_fmadd_pd(a, b, acc_re);
            acc_im = _mm256_fmadd_pd(a, _mm256_permute_pd(b, 0b0101), acc_im);
        }

        const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
        double re = hsum(acc_re);
        double im = hsum(_mm256_mul_pd(acc_im, sign));
        if (n % 2)
        {
            const cplx a = u[n - 1], b = v[n - 1];
            re += a.real() * b.real() + a.imag() * b.imag();
            im += a.real() * b.imag() - a.imag() * b.real();
        }
        return {re, im};
    }

    double squared_norm(std::span<const cplx> u)
    {
        const double *ud = reinterpret_cast<const double *>(u.data());
        const std::size_t doubles = 2 * u.size();
        __m256d acc = _mm256_setzero_pd();
        std::size_t k = 0;
        for (; k + 4 <= doubles; k += 4)
        {
            const __m256d a = _mm256_loadu_pd(ud + k);
            acc = _mm256_fmadd_pd(a, a, acc);
        }
        double s = hsum(acc);
        for (; k < doubles; ++k)
            s += ud[k] * ud[k];
        return s;
    }

#else

    // Not an x86-64 build: the AVX2 entry points forward to the reference code
    // so the symbols exist; avx2_available() reports false and they are never
    // selected by the dispatcher.
    void matvec(std::span<const cplx> A, Index rows, Index cols, std::span<const cplx> x, std::span<cplx> y)
    {
        scalar::matvec(A, rows, cols, x, y);
    }
    cplx dot(std::span<const cplx> u, std::span<const cplx> v) { return scalar::dot(u, v); }
    double squared_norm(std::span<const cplx> u) { return scalar::squared_norm(u); }

#endif
} // namespace orthoris::kernels::avx2
