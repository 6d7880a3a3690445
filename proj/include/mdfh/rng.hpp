// SPDX-License-Identifier: Apache-2.0
//
// mdfh — matrix-decomposition fronthaul compression for the massive MIMO uplink
// Copyright (C) 2026 the mdfh contributors
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

#include "types.hpp"

namespace mdfh
{

// splitmix64: tiny, well-mixed generator used to derive independent
// sub-seeds (channel / data / noise / pilot) from one trial seed, so that
// adding a consumer never shifts the streams of the others.
struct splitmix64
{
    std::uint64_t state;

    explicit splitmix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

namespace detail
{
// Fill a matrix with i.i.d. circular-symmetric complex Gaussian entries of
// unit variance (real and imaginary parts N(0, 1/2)), row-major draw order.
inline void fill_complex_gaussian(cmat &m, std::mt19937_64 &eng)
{
    std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(2.0));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
        {
            double re = g(eng);
            double im = g(eng);
            m(r, c) = cpx(re, im);
        }
}
} // namespace detail

} // namespace mdfh
