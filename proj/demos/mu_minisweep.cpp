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
// Worked multi-user example: a small two-user zero-forcing sweep comparing
// the proposed pipeline, the PCA baseline and the uncompressed reference.

#include <iostream>

#include <mdfh/mdfh.hpp>

int main()
{
    using namespace mdfh;

    SimConfig cfg;
    cfg.n = 256;
    cfg.n_r = 16;
    cfg.n_u = 2;
    cfg.l = 3;
    cfg.m = 16;
    cfg.snr_db = {6, 10, 14};
    cfg.max_iter = 20;
    cfg.pdp = "exp3db";
    cfg.pipelines = {"proposed", "pca", "uncompressed"};
    cfg.trials = 4;
    cfg.seed = 2026;
    cfg.genie = true;

    std::cout << "MU grid " << cfg.n << "x" << cfg.n_r << ", " << cfg.n_u << " users, formula CR "
              << cr_mu(cfg.n, cfg.n_r, cfg.l, cfg.n_u) << " (PCA " << cr_mu_pca(cfg.n, cfg.n_r, cfg.l, cfg.n_u)
              << ")\n\n";
    std::cout << records_to_csv(run_sweep(cfg));
    return 0;
}
