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
// Fronthaul frame format (".fhf", little-endian):
//
//   offset  size  field
//   0       4     magic "FHF1"
//   4       4     version, u32, currently 1
//   8       4     mode, u32: 1 = SU, 2 = MU, 3 = PCA
//   12      4     N (subcarriers), u32
//   16      4     N_r (stored antenna columns), u32
//   20      4     N_u (users; 1 for SU and PCA), u32
//   24      4     L (channel length / PCA rank), u32
//   28      4     iterations, u32 (0 for PCA)
//   32      8     residual, binary64 (0 for PCA)
//   40      ...   body: complex samples as binary32 I,Q pairs, row-major;
//                 x_hat vectors first (user order), then h_hat rows — or
//                 scores then components for PCA.
//
// Body sample count: N_u (N + L N_r) for SU/MU, L (N + N_r) for PCA.
// Convergence status and the residual trace do not travel on the wire;
// decoded payloads report converged = false.

#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "compressor.hpp"
#include "pca.hpp"
#include "types.hpp"

namespace mdfh
{

enum class frame_mode : std::uint32_t
{
    su = 1,
    mu = 2,
    pca = 3
};

inline constexpr std::size_t frame_header_bytes = 40;
inline constexpr char frame_magic[4] = {'F', 'H', 'F', '1'};
inline constexpr std::uint32_t frame_version = 1;

namespace detail
{
inline void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(std::uint8_t((v >> (8 * i)) & 0xFF));
}

inline void put_f32(std::vector<std::uint8_t> &out, float v)
{
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

inline void put_f64(std::vector<std::uint8_t> &out, double v)
{
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i)
        out.push_back(std::uint8_t((bits >> (8 * i)) & 0xFF));
}

inline std::uint32_t get_u32(const std::uint8_t *p)
{
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

inline float get_f32(const std::uint8_t *p)
{
    std::uint32_t bits = get_u32(p);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

inline double get_f64(const std::uint8_t *p)
{
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i)
        bits = (bits << 8) | p[i];
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

inline void put_samples(std::vector<std::uint8_t> &out, const cmat &m)
{
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
        {
            put_f32(out, float(m(r, c).real()));
            put_f32(out, float(m(r, c).imag()));
        }
}

inline void put_samples(std::vector<std::uint8_t> &out, const cvec &v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        put_f32(out, float(v[i].real()));
        put_f32(out, float(v[i].imag()));
    }
}

struct frame_header
{
    frame_mode mode;
    std::uint32_t n, n_r, n_u, l, iterations;
    double residual;
    std::size_t body_samples; // validated complex sample count
};

// Validate everything about a frame except the sample values themselves.
inline frame_header check_frame(const std::vector<std::uint8_t> &bytes)
{
    if (bytes.size() < frame_header_bytes)
        throw frame_error(frame_error_kind::truncated, "stream shorter than the 40-byte header");
    if (std::memcmp(bytes.data(), frame_magic, 4) != 0)
        throw frame_error(frame_error_kind::bad_magic, "magic is not FHF1");
    std::uint32_t version = get_u32(bytes.data() + 4);
    if (version != frame_version)
        throw frame_error(frame_error_kind::bad_version, "unsupported version " + std::to_string(version));
    std::uint32_t mode_raw = get_u32(bytes.data() + 8);
    if (mode_raw < 1 || mode_raw > 3)
        throw frame_error(frame_error_kind::bad_mode, "mode " + std::to_string(mode_raw) + " is not SU/MU/PCA");

    frame_header h;
    h.mode = frame_mode(mode_raw);
    h.n = get_u32(bytes.data() + 12);
    h.n_r = get_u32(bytes.data() + 16);
    h.n_u = get_u32(bytes.data() + 20);
    h.l = get_u32(bytes.data() + 24);
    h.iterations = get_u32(bytes.data() + 28);
    h.residual = get_f64(bytes.data() + 32);

    if (h.n == 0 || h.n_r == 0 || h.n_u == 0 || h.l == 0)
        throw frame_error(frame_error_kind::bad_dimensions, "zero dimension in header");
    if (h.mode != frame_mode::mu && h.n_u != 1)
        throw frame_error(frame_error_kind::bad_dimensions, "N_u must be 1 outside MU mode");
    if (h.mode == frame_mode::pca)
    {
        if (h.l > h.n || h.l > h.n_r)
            throw frame_error(frame_error_kind::bad_dimensions, "PCA rank exceeds min(N, N_r)");
    }
    else if (std::uint64_t(h.l) * h.n_u >= h.n)
        throw frame_error(frame_error_kind::bad_dimensions, "L*N_u must stay below N");

    // 128-bit arithmetic: header fields are attacker-controlled, the size
    // check must not overflow.
    unsigned __int128 samples;
    if (h.mode == frame_mode::pca)
        samples = (unsigned __int128)(h.l) * ((unsigned __int128)(h.n) + h.n_r);
    else
        samples = (unsigned __int128)(h.n_u) *
                  ((unsigned __int128)(h.n) + (unsigned __int128)(h.l) * h.n_r);
    unsigned __int128 expected = (unsigned __int128)frame_header_bytes + samples * 8;
    if ((unsigned __int128)bytes.size() < expected)
        throw frame_error(frame_error_kind::truncated, "stream shorter than the declared body");
    if ((unsigned __int128)bytes.size() > expected)
        throw frame_error(frame_error_kind::trailing_data, "stream longer than the declared body");
    h.body_samples = std::size_t(samples);
    return h;
}
} // namespace detail

// Serialize a matrix-decomposition payload.
inline std::vector<std::uint8_t> encode(const CompressedPayload &p)
{
    if (p.n == 0 || p.n_r == 0 || p.n_u == 0 || p.l == 0)
        throw invalid_configuration("encode: payload has empty dimensions");
    if (p.x_hat.size() != p.n_u || p.h_hat.rows() != Eigen::Index(p.l) * p.n_u ||
        p.h_hat.cols() != Eigen::Index(p.n_r))
        throw invalid_configuration("encode: payload fields inconsistent with dims");
    for (const cvec &x : p.x_hat)
        if (x.size() != Eigen::Index(p.n))
            throw invalid_configuration("encode: x_hat length mismatch");

    std::vector<std::uint8_t> out;
    out.reserve(frame_header_bytes + std::size_t(p.n_u) * (std::size_t(p.n) + std::size_t(p.l) * p.n_r) * 8);
    for (char m : frame_magic)
        out.push_back(std::uint8_t(m));
    detail::put_u32(out, frame_version);
    detail::put_u32(out, std::uint32_t(p.n_u == 1 ? frame_mode::su : frame_mode::mu));
    detail::put_u32(out, p.n);
    detail::put_u32(out, p.n_r);
    detail::put_u32(out, p.n_u);
    detail::put_u32(out, p.l);
    detail::put_u32(out, p.iterations);
    detail::put_f64(out, p.residual);
    for (const cvec &x : p.x_hat)
        detail::put_samples(out, x);
    detail::put_samples(out, p.h_hat);
    return out;
}

// Serialize a PCA payload.
inline std::vector<std::uint8_t> encode(const PcaPayload &p)
{
    if (p.n == 0 || p.n_r == 0 || p.l == 0)
        throw invalid_configuration("encode: PCA payload has empty dimensions");
    if (p.scores.rows() != Eigen::Index(p.n) || p.scores.cols() != Eigen::Index(p.l) ||
        p.components.rows() != Eigen::Index(p.l) || p.components.cols() != Eigen::Index(p.n_r))
        throw invalid_configuration("encode: PCA payload fields inconsistent with dims");

    std::vector<std::uint8_t> out;
    out.reserve(frame_header_bytes + std::size_t(p.l) * (std::size_t(p.n) + p.n_r) * 8);
    for (char m : frame_magic)
        out.push_back(std::uint8_t(m));
    detail::put_u32(out, frame_version);
    detail::put_u32(out, std::uint32_t(frame_mode::pca));
    detail::put_u32(out, p.n);
    detail::put_u32(out, p.n_r);
    detail::put_u32(out, 1);
    detail::put_u32(out, p.l);
    detail::put_u32(out, 0);
    detail::put_f64(out, 0.0);
    detail::put_samples(out, p.scores);
    detail::put_samples(out, p.components);
    return out;
}

using DecodedFrame = std::variant<CompressedPayload, PcaPayload>;

// Parse and validate a frame. Every malformed stream raises frame_error
// with a kind describing the first defect found; nothing else escapes.
inline DecodedFrame decode(const std::vector<std::uint8_t> &bytes)
{
    detail::frame_header h = detail::check_frame(bytes);
    const std::uint8_t *cur = bytes.data() + frame_header_bytes;
    auto next_sample = [&cur]() {
        cpx v(double(detail::get_f32(cur)), double(detail::get_f32(cur + 4)));
        cur += 8;
        return v;
    };

    if (h.mode == frame_mode::pca)
    {
        PcaPayload p;
        p.n = h.n;
        p.n_r = h.n_r;
        p.l = h.l;
        p.scores.resize(h.n, h.l);
        for (std::uint32_t r = 0; r < h.n; ++r)
            for (std::uint32_t c = 0; c < h.l; ++c)
                p.scores(r, c) = next_sample();
        p.components.resize(h.l, h.n_r);
        for (std::uint32_t r = 0; r < h.l; ++r)
            for (std::uint32_t c = 0; c < h.n_r; ++c)
                p.components(r, c) = next_sample();
        return p;
    }

    CompressedPayload p;
    p.n = h.n;
    p.n_r = h.n_r;
    p.n_u = h.n_u;
    p.l = h.l;
    p.iterations = h.iterations;
    p.residual = h.residual;
    p.converged = false; // not carried on the wire
    p.x_hat.assign(h.n_u, cvec(h.n));
    for (std::uint32_t u = 0; u < h.n_u; ++u)
        for (std::uint32_t m = 0; m < h.n; ++m)
            p.x_hat[u][m] = next_sample();
    p.h_hat.resize(Eigen::Index(h.l) * h.n_u, h.n_r);
    for (Eigen::Index r = 0; r < p.h_hat.rows(); ++r)
        for (Eigen::Index c = 0; c < p.h_hat.cols(); ++c)
            p.h_hat(r, c) = next_sample();
    return p;
}

// Measured compression ratio: original complex sample count over the
// frame's body sample count. The 40-byte header is excluded to mirror pure
// sample accounting.
inline double measured_cr(const FrequencyGrid &original, const std::vector<std::uint8_t> &frame)
{
    detail::check_frame(frame); // reject malformed frames before measuring
    if (original.n_subcarriers() < 1 || original.n_antennas() < 1)
        throw invalid_configuration("measured_cr: empty original grid");
    double original_samples = double(original.n_subcarriers()) * double(original.n_antennas());
    return original_samples / (double(frame.size() - frame_header_bytes) / 8.0);
}

inline void write_frame(const std::string &path, const std::vector<std::uint8_t> &bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw invalid_configuration("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
    if (!out)
        throw invalid_configuration("short write to '" + path + "'");
}

inline std::vector<std::uint8_t> read_frame(const std::string &path)
{
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in)
        throw invalid_configuration("cannot open '" + path + "'");
    std::streamsize size = in.tellg();
    in.seekg(0);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    in.read(reinterpret_cast<char *>(bytes.data()), size);
    if (!in)
        throw invalid_configuration("short read from '" + path + "'");
    return bytes;
}

} // namespace mdfh
