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
// Command-line front end:
//
//   mdfh tables                               compression-ratio tables (CSV)
//   mdfh sweep --config FILE [--out CSV]      Monte Carlo SER sweep
//   mdfh trace --config FILE --seed U64 [--out CSV]
//                                             per-iteration residual trace
//   mdfh gen --config FILE --seed U64 --out GRID
//                                             draw one received grid (.fhg)
//   mdfh compress GRID --out FHF --l L [--mode su|mu|pca] [--n-u U]
//                  [--eps E] [--max-iter I] [--subset K]
//                                             grid -> fronthaul frame (.fhf)
//   mdfh decompress FHF [--out GRID]          frame -> reconstructed grid

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <mdfh/mdfh.hpp>

namespace
{

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw mdfh::invalid_configuration("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw mdfh::invalid_configuration("short write to '" + path + "'");
}

void emit(const std::string &text, const std::string &out_path)
{
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
}

int cmd_tables(const std::string &out_path)
{
    emit(mdfh::reproduce_tables(), out_path);
    return 0;
}

int cmd_sweep(const std::string &config_path, const std::string &out_path)
{
    mdfh::SimConfig cfg = mdfh::load_config(config_path);
    std::vector<mdfh::SerRecord> records = mdfh::run_sweep(cfg);
    emit(mdfh::records_to_csv(records), out_path);
    // Zero observed errors only bounds the SER from above; say so on stderr
    // where it cannot disturb CSV consumers.
    for (const mdfh::SerRecord &r : records)
        if (r.symbols > 0 && r.errors == 0)
            std::cerr << "note: " << r.pipeline << " at " << r.snr_db << " dB saw no errors; SER < "
                      << (1.0 / double(r.symbols)) << "\n";
    return 0;
}

int cmd_trace(const std::string &config_path, std::uint64_t seed, const std::string &out_path)
{
    mdfh::SimConfig cfg = mdfh::load_config(config_path);
    emit(mdfh::trace_convergence(cfg, seed), out_path);
    return 0;
}

int cmd_gen(const std::string &config_path, std::uint64_t seed, const std::string &out_path)
{
    mdfh::SimConfig cfg = mdfh::load_config(config_path);
    mdfh::validate_config(cfg);
    mdfh::PowerDelayProfile pdp = mdfh::make_pdp(cfg.pdp, cfg.l);
    mdfh::detail::TrialSeeds seeds = mdfh::detail::derive_trial_seeds(seed, 0);
    mdfh::detail::TrialData t = mdfh::detail::make_trial(cfg, pdp, cfg.snr_db.front(), seeds);
    mdfh::save_grid(out_path, t.grid);
    std::cerr << "wrote " << cfg.n << "x" << cfg.n_r << " grid to " << out_path << "\n";
    return 0;
}

int cmd_compress(const std::string &grid_path, const std::string &out_path, const std::string &mode,
                 std::uint32_t l, std::uint32_t n_u, double eps, std::uint32_t max_iter, std::uint32_t subset)
{
    mdfh::FrequencyGrid grid = mdfh::load_grid(grid_path);
    std::vector<std::uint8_t> frame;
    std::uint32_t iterations = 0;
    double residual = 0.0;
    if (mode == "pca")
    {
        mdfh::PcaPayload p = mdfh::pca_compress(grid, Eigen::Index(l));
        if (subset > 0)
            p = mdfh::restrict_antennas(std::move(p), Eigen::Index(subset));
        frame = mdfh::encode(p);
    }
    else
    {
        mdfh::CompressedPayload p =
            mode == "mu" ? mdfh::compress_mu(grid, Eigen::Index(l), Eigen::Index(n_u), eps, max_iter)
                         : mdfh::compress_su(grid, Eigen::Index(l), eps, max_iter);
        iterations = p.iterations;
        residual = p.residual;
        if (subset > 0)
            p = mdfh::restrict_antennas(std::move(p), Eigen::Index(subset));
        frame = mdfh::encode(p);
    }
    mdfh::write_frame(out_path, frame);
    std::cerr << "wrote " << frame.size() << " bytes, measured CR " << mdfh::measured_cr(grid, frame);
    if (mode != "pca")
        std::cerr << ", " << iterations << " iterations, residual " << residual;
    std::cerr << "\n";
    return 0;
}

int cmd_decompress(const std::string &frame_path, const std::string &out_path)
{
    std::vector<std::uint8_t> frame = mdfh::read_frame(frame_path);
    mdfh::DecodedFrame decoded = mdfh::decode(frame);
    mdfh::FrequencyGrid grid;
    if (std::holds_alternative<mdfh::CompressedPayload>(decoded))
    {
        const mdfh::CompressedPayload &p = std::get<mdfh::CompressedPayload>(decoded);
        grid = mdfh::reconstruct(p);
        std::cerr << (p.n_u == 1 ? "SU" : "MU") << " frame: N=" << p.n << " N_r=" << p.n_r << " N_u=" << p.n_u
                  << " L=" << p.l << " iterations=" << p.iterations << " residual=" << p.residual << "\n";
    }
    else
    {
        const mdfh::PcaPayload &p = std::get<mdfh::PcaPayload>(decoded);
        grid = mdfh::pca_reconstruct(p);
        std::cerr << "PCA frame: N=" << p.n << " N_r=" << p.n_r << " L=" << p.l << "\n";
    }
    if (!out_path.empty())
        mdfh::save_grid(out_path, grid);
    else
        std::cerr << "reconstructed " << grid.n_subcarriers() << "x" << grid.n_antennas()
                  << " grid (pass --out to save it)\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mdfh: fronthaul compression by blind matrix decomposition"};
    app.require_subcommand(1);

    std::string config_path, out_path, grid_path, frame_path;
    std::string mode = "su";
    std::uint64_t seed = 1;
    std::uint32_t l = 0, n_u = 2, max_iter = 10, subset = 0;
    double eps = 1e-3;

    CLI::App *tables = app.add_subcommand("tables", "print the compression-ratio tables as CSV");
    tables->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App *sweep = app.add_subcommand("sweep", "run a Monte Carlo SER sweep");
    sweep->add_option("--config", config_path, "key=value config file")->required();
    sweep->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App *trace = app.add_subcommand("trace", "dump one instance's residual trace as CSV");
    trace->add_option("--config", config_path, "key=value config file")->required();
    trace->add_option("--seed", seed, "instance seed")->required();
    trace->add_option("--out", out_path, "write CSV here instead of stdout");

    CLI::App *gen = app.add_subcommand("gen", "draw one received frequency grid (.fhg)");
    gen->add_option("--config", config_path, "key=value config file")->required();
    gen->add_option("--seed", seed, "instance seed")->required();
    gen->add_option("--out", out_path, "output .fhg path")->required();

    CLI::App *compress = app.add_subcommand("compress", "compress a .fhg grid into a .fhf frame");
    compress->add_option("grid", grid_path, "input .fhg grid")->required();
    compress->add_option("--out", out_path, "output .fhf path")->required();
    compress->add_option("--l", l, "channel length L (PCA: rank)")->required();
    compress->add_option("--mode", mode, "su | mu | pca")->check(CLI::IsMember({"su", "mu", "pca"}));
    compress->add_option("--n-u", n_u, "user count for --mode mu");
    compress->add_option("--eps", eps, "relative-residual tolerance");
    compress->add_option("--max-iter", max_iter, "iteration cap");
    compress->add_option("--subset", subset, "keep only the first K antenna columns");

    CLI::App *decompress = app.add_subcommand("decompress", "reconstruct a grid from a .fhf frame");
    decompress->add_option("frame", frame_path, "input .fhf frame")->required();
    decompress->add_option("--out", out_path, "output .fhg path");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (tables->parsed())
            return cmd_tables(out_path);
        if (sweep->parsed())
            return cmd_sweep(config_path, out_path);
        if (trace->parsed())
            return cmd_trace(config_path, seed, out_path);
        if (gen->parsed())
            return cmd_gen(config_path, seed, out_path);
        if (compress->parsed())
            return cmd_compress(grid_path, out_path, mode, l, n_u, eps, max_iter, subset);
        if (decompress->parsed())
            return cmd_decompress(frame_path, out_path);
    }
    catch (const mdfh::error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
