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

#include <mdfh/compressor.hpp>
#include <mdfh/pca.hpp>
#include <mdfh/rng.hpp>

using namespace mdfh;
using Catch::Approx;

namespace
{
FrequencyGrid random_grid(Eigen::Index n, Eigen::Index n_r, std::uint64_t seed)
{
    FrequencyGrid g;
    g.samples.resize(n, n_r);
    std::mt19937_64 eng(seed);
    detail::fill_complex_gaussian(g.samples, eng);
    return g;
}
} // namespace

TEST_CASE("pca: rank-1 grids are reproduced exactly at L = 1")
{
    std::mt19937_64 eng(3);
    cmat u(16, 1), v(1, 4);
    detail::fill_complex_gaussian(u, eng);
    detail::fill_complex_gaussian(v, eng);
    FrequencyGrid g;
    g.samples = u * v;

    PcaPayload p = pca_compress(g, 1);
    CHECK((pca_reconstruct(p).samples - g.samples).norm() / g.samples.norm() < 1e-10);
}

TEST_CASE("pca: full-rank retention is lossless")
{
    FrequencyGrid g = random_grid(32, 8, 5);
    PcaPayload p = pca_compress(g, 8);
    CHECK((pca_reconstruct(p).samples - g.samples).norm() / g.samples.norm() < 1e-12);
}

TEST_CASE("pca: truncation error equals the discarded singular energy")
{
    FrequencyGrid g = random_grid(32, 8, 7);
    PcaPayload p = pca_compress(g, 3);
    FrequencyGrid rec = pca_reconstruct(p);

    Eigen::JacobiSVD<cmat> svd(g.samples);
    double discarded = 0.0;
    for (Eigen::Index i = 3; i < svd.singularValues().size(); ++i)
        discarded += svd.singularValues()[i] * svd.singularValues()[i];

    double resid2 = (g.samples - rec.samples).squaredNorm();
    CHECK(std::sqrt(resid2) == Approx(std::sqrt(discarded)).margin(1e-9 * g.samples.norm()));
}

TEST_CASE("pca: component rows are orthogonal and scores carry the energy")
{
    FrequencyGrid g = random_grid(24, 6, 9);
    PcaPayload p = pca_compress(g, 4);
    REQUIRE(p.scores.rows() == 24);
    REQUIRE(p.scores.cols() == 4);
    REQUIRE(p.components.rows() == 4);
    REQUIRE(p.components.cols() == 6);

    cmat gram = p.components * p.components.adjoint();
    CHECK((gram - cmat::Identity(4, 4)).norm() < 1e-10); // orthonormal rows
}

TEST_CASE("pca: no perturbed rank-L factorization beats the SVD truncation")
{
    FrequencyGrid g = random_grid(20, 6, 11);
    PcaPayload p = pca_compress(g, 2);
    double base = (g.samples - pca_reconstruct(p).samples).norm();

    std::mt19937_64 eng(13);
    for (int k = 0; k < 30; ++k)
    {
        PcaPayload q = p;
        cmat ds(q.scores.rows(), q.scores.cols()), dc(q.components.rows(), q.components.cols());
        detail::fill_complex_gaussian(ds, eng);
        detail::fill_complex_gaussian(dc, eng);
        q.scores += 1e-3 * ds;
        q.components += 1e-3 * dc;
        double perturbed = (g.samples - pca_reconstruct(q).samples).norm();
        REQUIRE(perturbed >= base - 1e-12);
    }
}

TEST_CASE("pca: reconstruction edge cases and validation")
{
    FrequencyGrid g = random_grid(16, 4, 15);
    CHECK_THROWS_AS(pca_compress(g, 0), invalid_configuration);
    CHECK_THROWS_AS(pca_compress(g, 5), invalid_configuration); // L > min(N, N_r)

    PcaPayload zero;
    zero.n = 8;
    zero.n_r = 4;
    zero.l = 2;
    zero.scores = cmat::Zero(8, 2);
    zero.components = cmat::Zero(2, 4);
    CHECK(pca_reconstruct(zero).samples.norm() == 0.0);

    PcaPayload p = pca_compress(g, 2);
    PcaPayload r = restrict_antennas(p, 3);
    CHECK(r.n_r == 3);
    CHECK(r.components.cols() == 3);
    CHECK((r.scores - p.scores).norm() == 0.0);
    CHECK_THROWS_AS(restrict_antennas(p, 0), invalid_configuration);
    CHECK_THROWS_AS(restrict_antennas(p, 5), invalid_configuration);
}

TEST_CASE("pca: compression-ratio formulas and the ratio law")
{
    CHECK(cr_su_pca(1024, 64, 12) == Approx(5.01960784313725).epsilon(1e-12));
    CHECK(cr_su_pca(4096, 64, 12) == Approx(5.25128205128205).epsilon(1e-12));
    CHECK(cr_mu_pca(1024, 64, 12, 4) == Approx(1.25490196078431).epsilon(1e-12));
    CHECK(cr_mu_pca(4096, 64, 12, 4) == Approx(1.31282051282051).epsilon(1e-12));
    CHECK_THROWS_AS(cr_su_pca(0, 64, 12), invalid_configuration);
    CHECK_THROWS_AS(cr_mu_pca(1024, 64, 12, 0), invalid_configuration);

    // Ratio law: cr_su / cr_su_pca = L (N + N_r) / (N + L N_r). The right-hand
    // side is built from exactly representable integers, so the library values
    // must match it to floating-point roundoff.
    auto ratio_law = [](double n, double n_r, double l) { return l * (n + n_r) / (n + l * n_r); };
    for (std::uint64_t n : {std::uint64_t(1024), std::uint64_t(4096), std::uint64_t(1) << 20})
    {
        double ratio = cr_su(n, 64, 12) / cr_su_pca(n, 64, 12);
        CHECK(ratio == Approx(ratio_law(double(n), 64.0, 12.0)).epsilon(1e-12));
        double ratio_mu = cr_mu(n, 64, 12, 4) / cr_mu_pca(n, 64, 12, 4);
        CHECK(ratio_mu == Approx(ratio_law(double(n), 64.0, 12.0)).epsilon(1e-12));
    }

    // For N >> max(L, N_r) the advantage approaches the factor L.
    double big = cr_su(1u << 20, 64, 12) / cr_su_pca(1u << 20, 64, 12);
    CHECK(big == Approx(12.0).epsilon(0.05));
}
