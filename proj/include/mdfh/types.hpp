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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace mdfh
{

using cpx  = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

// One user's modulated payload for one OFDM block: N frequency-domain
// M-QAM symbols with unit average constellation energy.
struct UserData
{
    cvec symbols;                       // length N, members of the M-QAM constellation
    int user_id = 1;                    // 1-based index within the multi-user set
    unsigned modulation_order = 4;      // M
};

// Frequency-domain received matrix Y_f: one row per subcarrier, one column
// per receive antenna.
struct FrequencyGrid
{
    cmat samples; // N x N_r

    [[nodiscard]] Eigen::Index n_subcarriers() const { return samples.rows(); }
    [[nodiscard]] Eigen::Index n_antennas() const { return samples.cols(); }
};

} // namespace mdfh
