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

#include <algorithm>
#include <cstdint>

#include "types.hpp"

namespace mdfh
{

// Rank-L truncated-SVD baseline. Applied to the raw frequency-domain grid
// without mean-centering: the baseline is plain best rank-L approximation,
// with singular values folded into the scores. L(N + N_r) complex scalars.
struct PcaPayload
{
    cmat scores;     // N x L  (U_L Sigma_L)
    cmat components; // L x N_r (V_L^H, orthonormal rows)

    std::uint32_t n = 0, n_r = 0, l = 0; // dims
};

// Best rank-L Frobenius approximation of the grid (Eckart–Young).
inline PcaPayload pca_compress(const FrequencyGrid &yf, Eigen::Index l)
{
    const Eigen::Index n = yf.n_subcarriers();
    const Eigen::Index n_r = yf.n_antennas();
    if (l < 1 || l > std::min(n, n_r))
        throw invalid_configuration("pca_compress: need 1 <= L <= min(N, N_r)");
    Eigen::JacobiSVD<cmat> svd(yf.samples, Eigen::ComputeThinU | Eigen::ComputeThinV);
    PcaPayload p;
    p.n = std::uint32_t(n);
    p.n_r = std::uint32_t(n_r);
    p.l = std::uint32_t(l);
    p.scores = svd.matrixU().leftCols(l) * svd.singularValues().head(l).asDiagonal();
    p.components = svd.matrixV().leftCols(l).adjoint();
    return p;
}

inline FrequencyGrid pca_reconstruct(const PcaPayload &p)
{
    return {p.scores * p.components};
}

// Keep only the first K antenna columns of the components (subset mode);
// scores are unchanged.
inline PcaPayload restrict_antennas(PcaPayload p, Eigen::Index k)
{
    if (k < 1 || k > Eigen::Index(p.n_r))
        throw invalid_configuration("restrict_antennas: need 1 <= K <= N_r");
    p.components = p.components.leftCols(k).eval();
    p.n_r = std::uint32_t(k);
    return p;
}

// Compression ratios of the PCA payloads.
inline double cr_su_pca(std::uint64_t n, std::uint64_t n_r, std::uint64_t l)
{
    if (n < 1 || n_r < 1 || l < 1)
        throw invalid_configuration("cr_su_pca: all dimensions must be positive");
    return double(n * n_r) / double(l * (n + n_r));
}

inline double cr_mu_pca(std::uint64_t n, std::uint64_t n_r, std::uint64_t l, std::uint64_t n_u)
{
    if (n < 1 || n_r < 1 || l < 1 || n_u < 1)
        throw invalid_configuration("cr_mu_pca: all dimensions must be positive");
    return double(n * n_r) / double(l * n_u * (n + n_r));
}

} // namespace mdfh
