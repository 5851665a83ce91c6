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

#include <cstdint>
#include <random>

#include "orthoris/types.hpp"

namespace orthoris::rng
{
    // splitmix64 finalizer
    inline std::uint64_t mix(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Independent stream for (seed, trial, tag); scheduling-independent.
    inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag = 0)
    {
        const std::uint64_t s = mix(mix(mix(seed) ^ trial) ^ (tag * 0x632be59bd9b4e019ULL));
        std::seed_seq seq{std::uint32_t(s), std::uint32_t(s >> 32)};
        return std::mt19937_64(seq);
    }

    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    inline cplx complex_gaussian(std::mt19937_64 &g, double variance = 1.0)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        const double s = std::sqrt(0.5 * variance);
        const double re = n(g);
        const double im = n(g);
        return {s * re, s * im};
    }

    inline CMatrix complex_gaussian(std::mt19937_64 &g, Index rows, Index cols, double variance = 1.0)
    {
        CMatrix A(rows, cols);
        for (Index i = 0; i < A.size(); ++i)
            A.data()[i] = complex_gaussian(g, variance);
        return A;
    }
} // namespace orthoris::rng
