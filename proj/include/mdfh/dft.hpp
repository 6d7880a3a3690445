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
#include <numbers>

#include "types.hpp"

namespace mdfh
{

// First L columns of the unnormalized N-point DFT matrix,
// entry (m, l) = exp(-j 2 pi m l / N). Maps L time-domain taps to the
// frequency response on all N tones; each column has squared norm N.
struct PartialDFT
{
    cmat matrix; // N x L

    [[nodiscard]] Eigen::Index n() const { return matrix.rows(); }
    [[nodiscard]] Eigen::Index l() const { return matrix.cols(); }
};

inline PartialDFT partial_dft(Eigen::Index n, Eigen::Index l)
{
    if (n < 1 || l < 1 || l > n)
        throw invalid_configuration("partial DFT needs 1 <= L <= N");
    PartialDFT f;
    f.matrix.resize(n, l);
    // Reduce m*l modulo N in integer arithmetic before forming the angle, so
    // entries stay on the unit circle to full precision for large N.
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index c = 0; c < l; ++c)
        {
            std::uint64_t t = (std::uint64_t(m) * std::uint64_t(c)) % std::uint64_t(n);
            f.matrix(m, c) = std::polar(1.0, -2.0 * std::numbers::pi * double(t) / double(n));
        }
    return f;
}

} // namespace mdfh
