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

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "types.hpp"

namespace mdfh
{

// Gray-mapped square M-QAM, M in {4, 16, 64, 256}, normalized to unit
// average constellation energy (scale 1/sqrt(2(M-1)/3)).
//
// Bit convention (fixed, the air interface of this library):
//   * log2(M) bits per symbol; the first half selects the I amplitude,
//     the second half the Q amplitude (each half MSB first).
//   * Each half is a binary-reflected Gray code; the decoded integer v
//     selects the amplitude (2^k - 1) - 2v, so the all-zero pattern maps
//     to the most positive amplitude on both axes.

inline bool qam_order_supported(unsigned M)
{
    return M == 4 || M == 16 || M == 64 || M == 256;
}

inline unsigned qam_bits_per_symbol(unsigned M)
{
    if (!qam_order_supported(M))
        throw invalid_configuration("unsupported QAM order " + std::to_string(M) + " (need 4, 16, 64 or 256)");
    unsigned b = 0;
    while ((1u << b) < M)
        ++b;
    return b; // 2, 4, 6, 8
}

namespace detail
{
// Decode a binary-reflected Gray code (MSB first) to its binary value.
inline unsigned gray_decode(unsigned g)
{
    unsigned v = g;
    for (unsigned s = 1; s < 16; s <<= 1)
        v ^= v >> s;
    return v;
}

// Amplitude of one axis for the Gray half-pattern 'half' with k bits.
inline double qam_axis_amplitude(unsigned half, unsigned k)
{
    unsigned v = gray_decode(half);
    return double((1u << k) - 1) - 2.0 * double(v);
}

inline double qam_scale(unsigned M)
{
    return std::sqrt(3.0 / (2.0 * (double(M) - 1.0))); // 1/sqrt(2(M-1)/3)
}
} // namespace detail

// Constellation point for index i in 0..M-1, where i read as log2(M) bits
// (MSB first) is the bit pattern of the symbol.
inline cpx qam_point(unsigned index, unsigned M)
{
    unsigned b = qam_bits_per_symbol(M);
    if (index >= M)
        throw invalid_configuration("QAM index " + std::to_string(index) + " out of range for M=" + std::to_string(M));
    unsigned k = b / 2;
    unsigned i_half = index >> k;
    unsigned q_half = index & ((1u << k) - 1u);
    double s = detail::qam_scale(M);
    return {s * detail::qam_axis_amplitude(i_half, k), s * detail::qam_axis_amplitude(q_half, k)};
}

// Full constellation in index order (index == bit pattern).
inline std::vector<cpx> qam_constellation(unsigned M)
{
    std::vector<cpx> pts(M);
    for (unsigned i = 0; i < M; ++i)
        pts[i] = qam_point(i, M);
    return pts;
}

// Map a bit vector (values 0/1, length divisible by log2(M)) to unit-energy
// M-QAM symbols. The empty bit vector maps to an empty symbol vector.
inline UserData qam_modulate(const std::vector<std::uint8_t> &bits, unsigned M, int user_id = 1)
{
    unsigned b = qam_bits_per_symbol(M);
    if (bits.size() % b != 0)
        throw invalid_configuration("bit count " + std::to_string(bits.size()) + " not divisible by log2(M)=" +
                                    std::to_string(b));
    for (std::uint8_t bit : bits)
        if (bit > 1)
            throw invalid_configuration("bit vector contains non-binary value " + std::to_string(bit));
    UserData out;
    out.user_id = user_id;
    out.modulation_order = M;
    out.symbols.resize(Eigen::Index(bits.size() / b));
    for (Eigen::Index n = 0; n < out.symbols.size(); ++n)
    {
        unsigned idx = 0;
        for (unsigned j = 0; j < b; ++j)
            idx = (idx << 1) | unsigned(bits[std::size_t(n) * b + j]);
        out.symbols[n] = qam_point(idx, M);
    }
    return out;
}

// Minimum-Euclidean-distance hard decision per symbol; returns constellation
// indices. Ties break toward the smallest index.
inline std::vector<std::uint32_t> qam_demodulate(const cvec &symbols, unsigned M)
{
    std::vector<cpx> pts = qam_constellation(M);
    std::vector<std::uint32_t> idx(std::size_t(symbols.size()));
    for (Eigen::Index n = 0; n < symbols.size(); ++n)
    {
        double best = std::numeric_limits<double>::infinity();
        std::uint32_t arg = 0;
        for (unsigned i = 0; i < M; ++i)
        {
            double d = std::norm(symbols[n] - pts[i]);
            if (d < best)
            {
                best = d;
                arg = i;
            }
        }
        idx[std::size_t(n)] = arg;
    }
    return idx;
}

} // namespace mdfh
