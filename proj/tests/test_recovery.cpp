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

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <mdfh/channel.hpp>
#include <mdfh/compressor.hpp>
#include <mdfh/dft.hpp>
#include <mdfh/pdp.hpp>
#include <mdfh/qam.hpp>
#include <mdfh/recovery.hpp>
#include <mdfh/signal_model.hpp>

using namespace mdfh;
using Catch::Approx;

namespace
{
std::vector<std::uint8_t> random_bits(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 eng(seed);
    std::vector<std::uint8_t> bits(count);
    for (std::uint8_t &b : bits)
        b = std::uint8_t(eng() & 1u);
    return bits;
}

std::vector<UserData> random_users(Eigen::Index n, std::size_t n_u, unsigned m, std::uint64_t seed)
{
    std::vector<UserData> users;
    unsigned bps = qam_bits_per_symbol(m);
    for (std::size_t u = 0; u < n_u; ++u)
        users.push_back(qam_modulate(random_bits(std::size_t(n) * bps, seed + 17 * u), m, int(u + 1)));
    return users;
}

CompressedPayload random_payload(std::uint32_t n, std::uint32_t n_r, std::uint32_t n_u, std::uint32_t l,
                                 std::uint64_t seed)
{
    std::mt19937_64 eng(seed);
    CompressedPayload p;
    p.n = n;
    p.n_r = n_r;
    p.n_u = n_u;
    p.l = l;
    p.x_hat.resize(n_u);
    for (cvec &x : p.x_hat)
    {
        cmat col(n, 1);
        detail::fill_complex_gaussian(col, eng);
        x = col.col(0);
    }
    p.h_hat.resize(Eigen::Index(l) * n_u, n_r);
    detail::fill_complex_gaussian(p.h_hat, eng);
    return p;
}
} // namespace

TEST_CASE("reconstruct: matches the defining product for known factors")
{
    CompressedPayload p = random_payload(16, 4, 2, 3, 21);
    PartialDFT f = partial_dft(16, 3);
    cmat expected = cmat::Zero(16, 4);
    for (std::uint32_t u = 0; u < 2; ++u)
        expected += p.x_hat[u].asDiagonal() * (f.matrix * p.h_block(u));

    FrequencyGrid rec = reconstruct(p);
    CHECK((rec.samples - expected).norm() < 1e-12 * expected.norm());
}

TEST_CASE("reconstruct: zero symbol estimates give the zero grid")
{
    CompressedPayload p = random_payload(16, 4, 1, 2, 23);
    p.x_hat[0].setZero();
    CHECK(reconstruct(p).samples.norm() == 0.0);
}

TEST_CASE("reconstruct: invariant under the per-user scalar ambiguity")
{
    CompressedPayload p = random_payload(32, 8, 2, 2, 25);
    FrequencyGrid base = reconstruct(p);

    CompressedPayload q = p;
    cpx lambda0(0.7, -1.3), lambda1(-2.0, 0.4);
    q.x_hat[0] *= lambda0;
    q.h_hat.topRows(2) /= lambda0;
    q.x_hat[1] *= lambda1;
    q.h_hat.bottomRows(2) /= lambda1;

    FrequencyGrid scaled = reconstruct(q);
    CHECK((scaled.samples - base.samples).norm() < 1e-9 * base.samples.norm());
}

TEST_CASE("reconstruct: rejects inconsistent payloads")
{
    CompressedPayload p = random_payload(16, 4, 2, 3, 27);

    SECTION("wrong h_hat row count")
    {
        p.h_hat = cmat::Zero(5, 4);
        CHECK_THROWS_AS(reconstruct(p), invalid_configuration);
    }
    SECTION("wrong x_hat vector count")
    {
        p.x_hat.pop_back();
        CHECK_THROWS_AS(reconstruct(p), invalid_configuration);
    }
    SECTION("wrong x_hat length")
    {
        p.x_hat[1] = cvec::Zero(15);
        CHECK_THROWS_AS(reconstruct(p), invalid_configuration);
    }
    SECTION("empty dims")
    {
        p.n = 0;
        CHECK_THROWS_AS(reconstruct(p), invalid_configuration);
    }
}

TEST_CASE("genie_channel: exact frequency response for every user")
{
    PowerDelayProfile pdp = make_pdp("exp3db", 3);
    ChannelRealization chan = draw_channel(pdp, 4, 2, 0.5, 31);
    ChannelEstimate est = genie_channel(chan, 16);
    REQUIRE(est.n_users() == 2);
    CHECK(est.source == ChannelEstimate::Source::genie);

    PartialDFT f = partial_dft(16, 3);
    for (std::size_t u = 0; u < 2; ++u)
        CHECK((est.freq_response[u] - f.matrix * chan.taps[u]).norm() == 0.0);

    ChannelRealization empty;
    CHECK_THROWS_AS(genie_channel(empty, 16), invalid_configuration);
}

TEST_CASE("estimate_channel: noiseless single-user pilots recover the response")
{
    const Eigen::Index n = 32, n_r = 4, l = 3;
    PowerDelayProfile pdp = uniform_pdp(l);
    ChannelRealization chan = draw_channel(pdp, n_r, 1, 0.7, 33);

    // Pilot block: known 4-QAM symbols on every tone (single user owns all).
    std::vector<UserData> pilots = random_users(n, 1, 4, 35);
    FrequencyGrid grid = assemble_grid(pilots, chan, std::numeric_limits<double>::infinity(), 0);

    ChannelEstimate est = estimate_channel(grid, pilots, l);
    PartialDFT f = partial_dft(n, l);
    cmat truth = f.matrix * chan.taps[0];
    CHECK((est.freq_response[0] - truth).norm() < 1e-9 * truth.norm());
}

TEST_CASE("estimate_channel: interleaved combs separate two users")
{
    const Eigen::Index n = 16, n_r = 4, l = 2;
    ChannelRealization chan = draw_channel(uniform_pdp(l), n_r, 2, 0.5, 41);

    // Comb pilots: user u transmits only on tones m = u-1 (mod 2), zero
    // elsewhere, so the superposition is separable per tone.
    std::vector<UserData> pilots(2);
    for (int u = 0; u < 2; ++u)
    {
        pilots[std::size_t(u)].user_id = u + 1;
        pilots[std::size_t(u)].symbols = cvec::Zero(n);
        for (Eigen::Index m = u; m < n; m += 2)
            pilots[std::size_t(u)].symbols[m] = std::polar(1.0, 0.25 * double(m + u));
    }
    FrequencyGrid grid = assemble_grid(pilots, chan, std::numeric_limits<double>::infinity(), 0);

    ChannelEstimate est = estimate_channel(grid, pilots, l);
    PartialDFT f = partial_dft(n, l);
    for (std::size_t u = 0; u < 2; ++u)
    {
        cmat truth = f.matrix * chan.taps[u];
        CHECK((est.freq_response[u] - truth).norm() < 1e-9 * truth.norm());
    }
}

TEST_CASE("estimate_channel: validation and degenerate pilots")
{
    const Eigen::Index n = 16;
    ChannelRealization chan = draw_channel(uniform_pdp(2), 4, 1, 0.0, 43);
    std::vector<UserData> pilots = random_users(n, 1, 4, 45);
    FrequencyGrid grid = assemble_grid(pilots, chan, std::numeric_limits<double>::infinity(), 0);

    SECTION("no users") { CHECK_THROWS_AS(estimate_channel(grid, {}, 2), invalid_configuration); }
    SECTION("L too large for the comb")
    {
        CHECK_THROWS_AS(estimate_channel(grid, pilots, 17), invalid_configuration);
    }
    SECTION("zero pilot tone is degenerate")
    {
        pilots[0].symbols[5] = 0.0;
        CHECK_THROWS_AS(estimate_channel(grid, pilots, 2), degenerate_input);
    }
    SECTION("pilot length mismatch")
    {
        pilots[0].symbols = cvec::Ones(8);
        CHECK_THROWS_AS(estimate_channel(grid, pilots, 2), invalid_configuration);
    }
    SECTION("user_id outside 1..N_u")
    {
        pilots[0].user_id = 3;
        CHECK_THROWS_AS(estimate_channel(grid, pilots, 2), invalid_configuration);
    }
}

TEST_CASE("mrc_combine: single antenna with unit channel is the identity")
{
    const Eigen::Index n = 8;
    std::vector<UserData> users = random_users(n, 1, 16, 51);
    ChannelEstimate est;
    est.freq_response.push_back(cmat::Ones(n, 1));
    FrequencyGrid grid;
    grid.samples = users[0].symbols;

    EqualizedSymbols eq = mrc_combine(grid, est, 1);
    CHECK((eq.estimates[0] - users[0].symbols).norm() == 0.0);
    for (std::uint8_t e : eq.erased[0])
        CHECK(e == 0);
}

TEST_CASE("mrc_combine: noiseless recovery through a fading channel")
{
    const Eigen::Index n = 32, n_r = 6, l = 3;
    ChannelRealization chan = draw_channel(make_pdp("exp3db", l), n_r, 1, 0.6, 53);
    std::vector<UserData> users = random_users(n, 1, 64, 55);
    FrequencyGrid grid = assemble_grid(users, chan, std::numeric_limits<double>::infinity(), 0);
    ChannelEstimate est = genie_channel(chan, n);

    for (Eigen::Index k : {Eigen::Index(1), Eigen::Index(3), n_r})
    {
        EqualizedSymbols eq = mrc_combine(grid, est, k);
        CHECK((eq.estimates[0] - users[0].symbols).norm() < 1e-9);
    }
}

TEST_CASE("mrc_combine: zero channel rows are erased, not divided by")
{
    const Eigen::Index n = 8;
    ChannelEstimate est;
    est.freq_response.push_back(cmat::Ones(n, 2));
    est.freq_response[0].row(3).setZero();
    FrequencyGrid grid;
    grid.samples = cmat::Ones(n, 2);

    EqualizedSymbols eq = mrc_combine(grid, est, 2);
    CHECK(eq.erased[0][3] == 1);
    CHECK(eq.estimates[0][3] == cpx(0.0, 0.0));
    CHECK(eq.erased[0][2] == 0);
}

TEST_CASE("mrc_combine: validation")
{
    const Eigen::Index n = 8;
    FrequencyGrid grid;
    grid.samples = cmat::Ones(n, 2);
    ChannelEstimate est;
    est.freq_response.push_back(cmat::Ones(n, 2));

    CHECK_THROWS_AS(mrc_combine(grid, est, 0), invalid_configuration);
    CHECK_THROWS_AS(mrc_combine(grid, est, 3), invalid_configuration);

    est.freq_response.push_back(cmat::Ones(n, 2)); // two users -> wrong combiner
    CHECK_THROWS_AS(mrc_combine(grid, est, 2), invalid_configuration);

    ChannelEstimate short_est;
    short_est.freq_response.push_back(cmat::Ones(4, 2));
    CHECK_THROWS_AS(mrc_combine(grid, short_est, 2), invalid_configuration);
}

TEST_CASE("zf_equalize: single user coincides with MRC")
{
    const Eigen::Index n = 16, n_r = 4, l = 2;
    ChannelRealization chan = draw_channel(uniform_pdp(l), n_r, 1, 0.4, 61);
    std::vector<UserData> users = random_users(n, 1, 16, 63);
    FrequencyGrid grid = assemble_grid(users, chan, 12.0, 65);
    ChannelEstimate est = genie_channel(chan, n);

    EqualizedSymbols mrc = mrc_combine(grid, est, n_r);
    EqualizedSymbols zf = zf_equalize(grid, est, n_r);
    CHECK((mrc.estimates[0] - zf.estimates[0]).norm() < 1e-10);
}

TEST_CASE("zf_equalize: noiseless multi-user separation is exact")
{
    const Eigen::Index n = 32, n_r = 6, l = 2;
    ChannelRealization chan = draw_channel(uniform_pdp(l), n_r, 3, 0.5, 67);
    std::vector<UserData> users = random_users(n, 3, 16, 69);
    FrequencyGrid grid = assemble_grid(users, chan, std::numeric_limits<double>::infinity(), 0);
    ChannelEstimate est = genie_channel(chan, n);

    EqualizedSymbols eq = zf_equalize(grid, est, n_r);
    for (std::size_t u = 0; u < 3; ++u)
        CHECK((eq.estimates[u] - users[u].symbols).norm() < 1e-9);
}

TEST_CASE("zf_equalize: unbiased under strong antenna correlation")
{
    const Eigen::Index n = 16, n_r = 8, l = 2;
    ChannelRealization chan = draw_channel(uniform_pdp(l), n_r, 2, 0.85, 71);
    std::vector<UserData> users = random_users(n, 2, 64, 73);
    FrequencyGrid grid = assemble_grid(users, chan, std::numeric_limits<double>::infinity(), 0);
    ChannelEstimate est = genie_channel(chan, n);

    EqualizedSymbols eq = zf_equalize(grid, est, n_r);
    for (std::size_t u = 0; u < 2; ++u)
        CHECK((eq.estimates[u] - users[u].symbols).norm() < 1e-9);
}

TEST_CASE("zf_equalize: rank-deficient subcarriers are erased for all users")
{
    const Eigen::Index n = 8, n_r = 4;
    ChannelEstimate est;
    std::mt19937_64 eng(75);
    cmat h0(n, n_r), h1(n, n_r);
    detail::fill_complex_gaussian(h0, eng);
    h1 = 2.0 * h0; // user columns proportional everywhere -> rank 1 per tone
    est.freq_response = {h0, h1};

    FrequencyGrid grid;
    grid.samples = cmat::Ones(n, n_r);
    EqualizedSymbols eq = zf_equalize(grid, est, n_r);
    for (std::size_t u = 0; u < 2; ++u)
        for (Eigen::Index m = 0; m < n; ++m)
            CHECK(eq.erased[u][std::size_t(m)] == 1);
}

TEST_CASE("zf_equalize: validation")
{
    const Eigen::Index n = 8, n_r = 4;
    FrequencyGrid grid;
    grid.samples = cmat::Ones(n, n_r);
    ChannelEstimate est;
    est.freq_response = {cmat::Ones(n, n_r), cmat::Ones(n, n_r)};

    CHECK_THROWS_AS(zf_equalize(grid, est, 1), invalid_configuration); // K < N_u
    CHECK_THROWS_AS(zf_equalize(grid, est, 5), invalid_configuration); // K > N_r
    ChannelEstimate none;
    CHECK_THROWS_AS(zf_equalize(grid, none, 2), invalid_configuration);
}

TEST_CASE("compute_ser: exact error counting with erasures")
{
    std::vector<UserData> truth = random_users(8, 1, 16, 81);
    EqualizedSymbols eq;
    eq.estimates.push_back(truth[0].symbols);
    eq.erased.push_back(std::vector<std::uint8_t>(8, 0));

    SECTION("perfect estimates count zero errors")
    {
        SerFragment frag = compute_ser(eq, truth, 16);
        CHECK(frag.total_errors == 0);
        CHECK(frag.total_symbols == 8);
        CHECK(frag.symbols_per_user == 8);
        CHECK(frag.ser() == 0.0);
    }
    SECTION("a flipped symbol is one error")
    {
        eq.estimates[0][2] = -truth[0].symbols[2];
        SerFragment frag = compute_ser(eq, truth, 16);
        CHECK(frag.total_errors == 1);
        CHECK(frag.errors_per_user[0] == 1);
        CHECK(frag.ser() == Approx(1.0 / 8.0));
    }
    SECTION("erasures count as errors even when the estimate is right")
    {
        eq.erased[0][5] = 1;
        SerFragment frag = compute_ser(eq, truth, 16);
        CHECK(frag.total_errors == 1);
    }
    SECTION("user count mismatch throws")
    {
        std::vector<UserData> two = random_users(8, 2, 16, 83);
        CHECK_THROWS_AS(compute_ser(eq, two, 16), invalid_configuration);
    }
    SECTION("symbol count mismatch throws")
    {
        eq.estimates[0] = cvec::Zero(7);
        CHECK_THROWS_AS(compute_ser(eq, truth, 16), invalid_configuration);
    }
}

TEST_CASE("end to end: noiseless single-user link has zero symbol errors")
{
    // Even short of full convergence, the residual signal-space error after a
    // few dozen sweeps sits far inside the 64-QAM decision regions.
    const Eigen::Index n = 64, n_r = 8, l = 3;
    ChannelRealization chan = draw_channel(uniform_pdp(l), n_r, 1, 0.7, 91);
    std::vector<UserData> users = random_users(n, 1, 64, 93);
    FrequencyGrid grid = assemble_grid(users, chan, std::numeric_limits<double>::infinity(), 0);

    CompressedPayload payload = compress_su(grid, l, 1e-6, 50);
    FrequencyGrid rebuilt = reconstruct(payload);
    ChannelEstimate est = genie_channel(chan, n);
    EqualizedSymbols eq = mrc_combine(rebuilt, est, n_r);
    SerFragment frag = compute_ser(eq, users, 64);
    CHECK(frag.total_errors == 0);
}

TEST_CASE("end to end: noiseless two-user link has zero symbol errors")
{
    const Eigen::Index n = 64, n_r = 8, n_u = 2, l = 2;
    ChannelRealization chan = draw_channel(uniform_pdp(l), n_r, std::size_t(n_u), 0.7, 95);
    std::vector<UserData> users = random_users(n, std::size_t(n_u), 16, 97);
    FrequencyGrid grid = assemble_grid(users, chan, std::numeric_limits<double>::infinity(), 0);

    CompressedPayload payload = compress_mu(grid, l, n_u, 1e-6, 60);
    FrequencyGrid rebuilt = reconstruct(payload);
    ChannelEstimate est = genie_channel(chan, n);
    EqualizedSymbols eq = zf_equalize(rebuilt, est, n_r);
    SerFragment frag = compute_ser(eq, users, 16);
    CHECK(frag.total_errors == 0);
}
