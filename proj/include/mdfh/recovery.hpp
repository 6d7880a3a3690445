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
// Baseband-unit side: rebuild the received grid from a payload, estimate
// per-user channels (pilot least squares or genie), equalize (MRC for one
// user, zero-forcing for several) and count symbol errors.

#pragma once

#include <cstdint>
#include <vector>

#include "channel.hpp"
#include "compressor.hpp"
#include "dft.hpp"
#include "qam.hpp"
#include "types.hpp"

namespace mdfh
{

// Per-user frequency response used by the equalizers.
struct ChannelEstimate
{
    enum class Source
    {
        pilot_ls,
        genie
    };

    std::vector<cmat> freq_response; // per user, N x N_r
    Source source = Source::pilot_ls;

    [[nodiscard]] std::size_t n_users() const { return freq_response.size(); }
};

// Post-combining symbol estimates with per-symbol erasure marks. Erased
// symbols (degenerate combining systems) count as errors downstream.
struct EqualizedSymbols
{
    std::vector<cvec> estimates;              // per user, length N
    std::vector<std::vector<std::uint8_t>> erased; // per user, length N, 0/1
};

// Error counts produced by compute_ser.
struct SerFragment
{
    std::vector<std::uint64_t> errors_per_user;
    std::uint64_t symbols_per_user = 0;
    std::uint64_t total_errors = 0;
    std::uint64_t total_symbols = 0;

    [[nodiscard]] double ser() const
    {
        return total_symbols ? double(total_errors) / double(total_symbols) : 0.0;
    }
};

// Rebuild the grid a payload describes: sum_u diag(x_hat_u) F_L H_hat(u).
// The product is invariant to the per-user scalar ambiguity of the factors.
inline FrequencyGrid reconstruct(const CompressedPayload &p)
{
    if (p.n < 1 || p.n_r < 1 || p.n_u < 1 || p.l < 1)
        throw invalid_configuration("reconstruct: payload has empty dimensions");
    if (p.x_hat.size() != p.n_u || p.h_hat.rows() != Eigen::Index(p.l) * p.n_u ||
        p.h_hat.cols() != Eigen::Index(p.n_r))
        throw invalid_configuration("reconstruct: payload fields inconsistent with dims");
    PartialDFT f = partial_dft(p.n, p.l);
    cmat out = cmat::Zero(p.n, p.n_r);
    for (std::uint32_t u = 0; u < p.n_u; ++u)
    {
        if (p.x_hat[u].size() != Eigen::Index(p.n))
            throw invalid_configuration("reconstruct: x_hat length mismatch");
        out.noalias() += p.x_hat[u].asDiagonal() * (f.matrix * p.h_block(u));
    }
    return {std::move(out)};
}

// Exact channel knowledge: frequency response F_L H_t(u) per user.
inline ChannelEstimate genie_channel(const ChannelRealization &chan, Eigen::Index n)
{
    if (chan.n_users() < 1)
        throw invalid_configuration("genie_channel: empty channel");
    PartialDFT f = partial_dft(n, chan.n_taps());
    ChannelEstimate est;
    est.source = ChannelEstimate::Source::genie;
    est.freq_response.reserve(chan.n_users());
    for (const cmat &taps : chan.taps)
        est.freq_response.emplace_back(f.matrix * taps);
    return est;
}

// Pilot-based least squares: per user, divide the pilot grid by the known
// pilot symbols on that user's tones (user u owns the comb m ≡ u-1 mod N_u,
// all tones for one user), fit L time-domain taps to the per-tone ratios
// (projection onto the column space of F_L) and interpolate back to all N
// tones. Pilot users must carry energy on every tone of their comb.
inline ChannelEstimate estimate_channel(const FrequencyGrid &pilot_grid, const std::vector<UserData> &pilot_symbols,
                                        Eigen::Index l)
{
    const Eigen::Index n = pilot_grid.n_subcarriers();
    const Eigen::Index n_r = pilot_grid.n_antennas();
    const Eigen::Index n_u = Eigen::Index(pilot_symbols.size());
    if (n_u < 1)
        throw invalid_configuration("estimate_channel: no pilot users");
    if (l < 1 || l * n_u > n)
        throw invalid_configuration("estimate_channel: need 1 <= L and L*N_u <= N");

    PartialDFT f = partial_dft(n, l);
    ChannelEstimate est;
    est.source = ChannelEstimate::Source::pilot_ls;
    est.freq_response.reserve(std::size_t(n_u));

    for (const UserData &user : pilot_symbols)
    {
        if (user.symbols.size() != n)
            throw invalid_configuration("estimate_channel: pilot symbol vector length mismatch");
        const Eigen::Index comb = Eigen::Index(user.user_id - 1);
        if (comb < 0 || comb >= n_u)
            throw invalid_configuration("estimate_channel: user_id " + std::to_string(user.user_id) +
                                        " outside 1..N_u");

        std::vector<Eigen::Index> tones;
        for (Eigen::Index m = comb; m < n; m += n_u)
            tones.push_back(m);

        cmat f_comb(Eigen::Index(tones.size()), l);
        cmat ratios(Eigen::Index(tones.size()), n_r);
        for (std::size_t t = 0; t < tones.size(); ++t)
        {
            const Eigen::Index m = tones[t];
            if (std::abs(user.symbols[m]) <= 1e-12)
                throw degenerate_input("estimate_channel: user " + std::to_string(user.user_id) +
                                       " has no pilot energy on tone " + std::to_string(m));
            f_comb.row(Eigen::Index(t)) = f.matrix.row(m);
            ratios.row(Eigen::Index(t)) = pilot_grid.samples.row(m) / user.symbols[m];
        }
        Eigen::CompleteOrthogonalDecomposition<cmat> cod(f_comb);
        cmat taps = cod.solve(ratios); // L x N_r
        est.freq_response.emplace_back(f.matrix * taps);
    }
    return est;
}

// Maximal ratio combining over the first K antennas (single user):
// x(m) = sum_r h*(m,r) y(m,r) / sum_r |h(m,r)|^2. A subcarrier with zero
// channel norm is erased.
inline EqualizedSymbols mrc_combine(const FrequencyGrid &grid, const ChannelEstimate &est, Eigen::Index k)
{
    if (est.n_users() != 1)
        throw invalid_configuration("mrc_combine: single-user combiner got " + std::to_string(est.n_users()) +
                                    " users (use zf_equalize)");
    const cmat &h = est.freq_response.front();
    const Eigen::Index n = grid.n_subcarriers();
    if (h.rows() != n)
        throw invalid_configuration("mrc_combine: estimate / grid subcarrier mismatch");
    if (k < 1 || k > grid.n_antennas() || k > h.cols())
        throw invalid_configuration("mrc_combine: need 1 <= K <= available antennas");

    EqualizedSymbols out;
    out.estimates.assign(1, cvec::Zero(n));
    out.erased.assign(1, std::vector<std::uint8_t>(std::size_t(n), 0));
    for (Eigen::Index m = 0; m < n; ++m)
    {
        double den = h.row(m).head(k).squaredNorm();
        if (den <= 0.0)
        {
            out.erased[0][std::size_t(m)] = 1;
            continue;
        }
        out.estimates[0][m] = (grid.samples.row(m).head(k) * h.row(m).head(k).adjoint().eval())(0, 0) / den;
    }
    return out;
}

// Zero-forcing over the first K antennas: per subcarrier, the minimum-norm
// least-squares solve of the K x N_u system H_m x = y_m. Subcarriers where
// H_m loses rank are erased for every user.
inline EqualizedSymbols zf_equalize(const FrequencyGrid &grid, const ChannelEstimate &est, Eigen::Index k)
{
    const Eigen::Index n_u = Eigen::Index(est.n_users());
    const Eigen::Index n = grid.n_subcarriers();
    if (n_u < 1)
        throw invalid_configuration("zf_equalize: no users in estimate");
    if (k < n_u)
        throw invalid_configuration("zf_equalize: need K >= N_u");
    if (k > grid.n_antennas())
        throw invalid_configuration("zf_equalize: K exceeds grid antennas");
    for (const cmat &h : est.freq_response)
        if (h.rows() != n || h.cols() < k)
            throw invalid_configuration("zf_equalize: estimate / grid dimension mismatch");

    EqualizedSymbols out;
    out.estimates.assign(std::size_t(n_u), cvec::Zero(n));
    out.erased.assign(std::size_t(n_u), std::vector<std::uint8_t>(std::size_t(n), 0));
    cmat a(k, n_u);
    for (Eigen::Index m = 0; m < n; ++m)
    {
        for (Eigen::Index u = 0; u < n_u; ++u)
            a.col(u) = est.freq_response[std::size_t(u)].row(m).head(k).transpose();
        Eigen::CompleteOrthogonalDecomposition<cmat> cod(a);
        if (cod.rank() < n_u)
        {
            for (Eigen::Index u = 0; u < n_u; ++u)
                out.erased[std::size_t(u)][std::size_t(m)] = 1;
            continue;
        }
        cvec xm = cod.solve(grid.samples.row(m).head(k).transpose());
        for (Eigen::Index u = 0; u < n_u; ++u)
            out.estimates[std::size_t(u)][m] = xm[u];
    }
    return out;
}

// Hard-decision symbol error counting: a symbol is in error when its
// nearest constellation point differs from the transmitted one, or when the
// equalizer erased it.
inline SerFragment compute_ser(const EqualizedSymbols &eq, const std::vector<UserData> &truth, unsigned m_order)
{
    if (eq.estimates.size() != truth.size() || eq.estimates.empty())
        throw invalid_configuration("compute_ser: user count mismatch");
    SerFragment frag;
    frag.symbols_per_user = std::uint64_t(truth.front().symbols.size());
    for (std::size_t u = 0; u < truth.size(); ++u)
    {
        if (eq.estimates[u].size() != truth[u].symbols.size())
            throw invalid_configuration("compute_ser: symbol count mismatch for user " + std::to_string(u + 1));
        std::vector<std::uint32_t> est_idx = qam_demodulate(eq.estimates[u], m_order);
        std::vector<std::uint32_t> ref_idx = qam_demodulate(truth[u].symbols, m_order);
        std::uint64_t errors = 0;
        for (std::size_t i = 0; i < est_idx.size(); ++i)
            if (eq.erased[u][i] || est_idx[i] != ref_idx[i])
                ++errors;
        frag.errors_per_user.push_back(errors);
        frag.total_errors += errors;
        frag.total_symbols += std::uint64_t(est_idx.size());
    }
    return frag;
}

} // namespace mdfh
