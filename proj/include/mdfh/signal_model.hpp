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

#include "channel.hpp"
#include "dft.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace mdfh
{

// Assemble the frequency-domain received matrix
//
//   Y_f = sum_u diag(x_u) F_L H_t(u) + W,
//
// the per-tone product form of circular convolution with the multipath taps.
// SNR is defined per subcarrier and antenna, directly in the frequency
// domain: the noise variance is (average signal power per entry) / 10^(snr/10)
// with independent circular complex Gaussian entries. Pass
// snr_db = infinity for a noiseless grid (no noise is drawn at all, so the
// same seed yields the identical signal term).
inline FrequencyGrid assemble_grid(const std::vector<UserData> &users, const ChannelRealization &chan, double snr_db,
                                   std::uint64_t noise_seed)
{
    if (users.empty() || users.size() != chan.n_users())
        throw invalid_configuration("assemble_grid: user count (" + std::to_string(users.size()) +
                                    ") must match channel user count (" + std::to_string(chan.n_users()) + ")");
    const Eigen::Index n = users.front().symbols.size();
    const Eigen::Index n_r = chan.n_antennas();
    const Eigen::Index l = chan.n_taps();
    if (n < 1 || n_r < 1 || l < 1)
        throw invalid_configuration("assemble_grid: empty symbols or channel");
    if (l > n)
        throw invalid_configuration("assemble_grid: channel length L exceeds N");
    for (const UserData &u : users)
        if (u.symbols.size() != n)
            throw invalid_configuration("assemble_grid: all users need length-N symbol vectors");
    for (const cmat &t : chan.taps)
        if (t.rows() != l || t.cols() != n_r)
            throw invalid_configuration("assemble_grid: inconsistent channel tap dimensions");

    PartialDFT f = partial_dft(n, l);
    cmat s = cmat::Zero(n, n_r);
    for (std::size_t u = 0; u < users.size(); ++u)
    {
        cmat hf = f.matrix * chan.taps[u];                              // N x N_r frequency response
        s.noalias() += users[u].symbols.asDiagonal() * hf;              // diag(x_u) F_L H_t(u)
    }

    if (std::isinf(snr_db))
        return {std::move(s)};

    double sig_power = s.squaredNorm() / (double(n) * double(n_r));
    double sigma2 = sig_power / std::pow(10.0, snr_db / 10.0);
    std::mt19937_64 eng(noise_seed);
    std::normal_distribution<double> g(0.0, std::sqrt(sigma2 / 2.0));
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index r = 0; r < n_r; ++r)
        {
            double re = g(eng);
            double im = g(eng);
            s(m, r) += cpx(re, im);
        }
    return {std::move(s)};
}

} // namespace mdfh
