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
//
// Raw frequency-grid container (".fhg", little-endian):
//
//   offset  size  field
//   0       4     magic "FHG1"
//   4       4     version, u32, currently 1
//   8       4     N (subcarriers), u32
//   12      4     N_r (antennas), u32
//   16      ...   N*N_r complex samples as binary64 I,Q pairs, row-major
//
// .fhg keeps full double precision: it carries the operator-facing input to
// the compressor, not the fronthaul payload itself.

#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "codec.hpp"
#include "errors.hpp"
#include "types.hpp"

namespace mdfh
{

inline constexpr std::size_t grid_header_bytes = 16;
inline constexpr char grid_magic[4] = {'F', 'H', 'G', '1'};
inline constexpr std::uint32_t grid_version = 1;

inline void save_grid(const std::string &path, const FrequencyGrid &grid)
{
    if (grid.n_subcarriers() < 1 || grid.n_antennas() < 1)
        throw invalid_configuration("save_grid: empty grid");

    std::vector<std::uint8_t> out;
    out.reserve(grid_header_bytes +
                std::size_t(grid.n_subcarriers()) * std::size_t(grid.n_antennas()) * 16);
    for (char m : grid_magic)
        out.push_back(std::uint8_t(m));
    detail::put_u32(out, grid_version);
    detail::put_u32(out, std::uint32_t(grid.n_subcarriers()));
    detail::put_u32(out, std::uint32_t(grid.n_antennas()));
    for (Eigen::Index r = 0; r < grid.samples.rows(); ++r)
        for (Eigen::Index c = 0; c < grid.samples.cols(); ++c)
        {
            detail::put_f64(out, grid.samples(r, c).real());
            detail::put_f64(out, grid.samples(r, c).imag());
        }
    write_frame(path, out);
}

inline FrequencyGrid load_grid(const std::string &path)
{
    std::vector<std::uint8_t> bytes = read_frame(path);
    if (bytes.size() < grid_header_bytes)
        throw frame_error(frame_error_kind::truncated, "grid shorter than the 16-byte header");
    if (std::memcmp(bytes.data(), grid_magic, 4) != 0)
        throw frame_error(frame_error_kind::bad_magic, "magic is not FHG1");
    std::uint32_t version = detail::get_u32(bytes.data() + 4);
    if (version != grid_version)
        throw frame_error(frame_error_kind::bad_version, "unsupported grid version " + std::to_string(version));
    std::uint32_t n = detail::get_u32(bytes.data() + 8);
    std::uint32_t n_r = detail::get_u32(bytes.data() + 12);
    if (n == 0 || n_r == 0)
        throw frame_error(frame_error_kind::bad_dimensions, "zero dimension in grid header");
    unsigned __int128 expected =
        (unsigned __int128)grid_header_bytes + (unsigned __int128)(n) * n_r * 16;
    if ((unsigned __int128)bytes.size() < expected)
        throw frame_error(frame_error_kind::truncated, "grid shorter than the declared body");
    if ((unsigned __int128)bytes.size() > expected)
        throw frame_error(frame_error_kind::trailing_data, "grid longer than the declared body");

    FrequencyGrid grid;
    grid.samples.resize(n, n_r);
    const std::uint8_t *cur = bytes.data() + grid_header_bytes;
    for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n_r; ++c)
        {
            double re = detail::get_f64(cur);
            double im = detail::get_f64(cur + 8);
            grid.samples(r, c) = cpx(re, im);
            cur += 16;
        }
    return grid;
}

} // namespace mdfh
