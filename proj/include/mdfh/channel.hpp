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
#include <vector>

#include "pdp.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace mdfh
{

// Time-domain multipath taps for every user: one L x N_r matrix per user,
// row l = taps of delay l across antennas. The channel is modeled constant
// over one OFDM block.
struct ChannelRealization
{
    std::vector<cmat> taps;       // N_u matrices, each L x N_r
    double correlation_rho = 0.0; // exponential antenna correlation coefficient
    PowerDelayProfile pdp;        // profile the taps were drawn from

    [[nodiscard]] std::size_t n_users() const { return taps.size(); }
    [[nodiscard]] Eigen::Index n_taps() const { return taps.empty() ? 0 : taps.front().rows(); }
    [[nodiscard]] Eigen::Index n_antennas() const { return taps.empty() ? 0 : taps.front().cols(); }
};

namespace detail
{
// Symmetric square root of the exponential correlation matrix
// R_{i,j} = rho^|i-j| via its eigendecomposition.
inline Eigen::MatrixXd correlation_sqrt(Eigen::Index n_r, double rho)
{
    Eigen::MatrixXd R(n_r, n_r);
    for (Eigen::Index i = 0; i < n_r; ++i)
        for (Eigen::Index j = 0; j < n_r; ++j)
            R(i, j) = std::pow(rho, double(i > j ? i - j : j - i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(R);
    Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
}
} // namespace detail

// Draw one channel realization: per user u and tap l, a 1 x N_r row
// sqrt(p_l) * g * R^(1/2), where g has i.i.d. unit-variance circular complex
// Gaussian entries and R is the exponential antenna correlation matrix.
// Deterministic for a given seed.
inline ChannelRealization draw_channel(const PowerDelayProfile &pdp, Eigen::Index n_r, std::size_t n_u, double rho,
                                       std::uint64_t seed)
{
    if (!(rho >= 0.0 && rho < 1.0))
        throw invalid_configuration("correlation rho must lie in [0, 1)");
    if (n_r < 1 || n_u < 1 || pdp.n_taps() < 1)
        throw invalid_configuration("draw_channel needs positive L, N_r and N_u");

    const Eigen::Index L = Eigen::Index(pdp.n_taps());
    Eigen::MatrixXd r_sqrt = detail::correlation_sqrt(n_r, rho);

    std::mt19937_64 eng(seed);
    ChannelRealization chan;
    chan.correlation_rho = rho;
    chan.pdp = pdp;
    chan.taps.reserve(n_u);
    for (std::size_t u = 0; u < n_u; ++u)
    {
        cmat g(L, n_r);
        detail::fill_complex_gaussian(g, eng);
        for (Eigen::Index l = 0; l < L; ++l)
            g.row(l) *= std::sqrt(pdp.tap_powers[std::size_t(l)]);
        chan.taps.emplace_back(g * r_sqrt);
    }
    return chan;
}

} // namespace mdfh
