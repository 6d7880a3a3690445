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
// Monte Carlo simulation harness: reproducible SER sweeps over the
// proposed / PCA / uncompressed pipelines, compression-ratio tables and
// convergence traces, all emitted as CSV.
//
// Determinism contract: a (config, seed) pair fixes every byte of output.
// Trial t derives four independent sub-seeds from splitmix64(seed + t)
// (channel, data, noise, pilot noise), and the trial index restarts at every
// SNR point, so all SNR points and all pipelines see the same channels and
// data (common random numbers). Pipelines draw no randomness of their own,
// which keeps records invariant under changes to the pipeline set.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "channel.hpp"
#include "codec.hpp"
#include "compressor.hpp"
#include "errors.hpp"
#include "pca.hpp"
#include "pdp.hpp"
#include "qam.hpp"
#include "recovery.hpp"
#include "rng.hpp"
#include "signal_model.hpp"
#include "types.hpp"

namespace mdfh
{

struct SimConfig
{
    std::uint32_t n = 64;
    std::uint32_t n_r = 8;
    std::uint32_t n_u = 1;
    std::uint32_t l = 3;
    unsigned m = 64;
    std::vector<double> snr_db = {10.0};
    double eps = 1e-3;
    std::uint32_t max_iter = 10;
    double rho = 0.7;
    std::string pdp = "uniform";
    std::uint32_t antenna_subset = 0; // 0 = use all N_r antennas
    std::vector<std::string> pipelines = {"proposed", "uncompressed"};
    std::uint32_t trials = 1;
    std::uint64_t seed = 1;
    bool genie = false;
};

struct SerRecord
{
    std::string pipeline;
    double snr_db = 0.0;
    std::uint64_t symbols = 0;
    std::uint64_t errors = 0;
    double ser = 0.0;
    std::uint32_t trials = 0;
    std::uint64_t seed = 0;
};

struct WilsonInterval
{
    double low = 0.0;
    double high = 1.0;
};

// 95% (z = 1.96) score confidence interval for a binomial proportion.
inline WilsonInterval wilson_interval(std::uint64_t errors, std::uint64_t n, double z = 1.96)
{
    if (n == 0)
        throw invalid_configuration("wilson_interval: zero samples");
    if (errors > n)
        throw invalid_configuration("wilson_interval: more errors than samples");
    double p = double(errors) / double(n);
    double z2n = z * z / double(n);
    double center = (p + z2n / 2.0) / (1.0 + z2n);
    double half = (z / (1.0 + z2n)) * std::sqrt(p * (1.0 - p) / double(n) + z2n / (4.0 * double(n)));
    WilsonInterval w;
    w.low = std::max(0.0, center - half);
    w.high = std::min(1.0, center + half);
    return w;
}

namespace detail
{
inline std::string trim(const std::string &s)
{
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

inline std::uint64_t parse_u64(const std::string &key, const std::string &value)
{
    const char *begin = value.c_str();
    char *end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0' || errno == ERANGE || value.find('-') != std::string::npos)
        throw invalid_configuration("config: bad unsigned integer for '" + key + "': " + value);
    return std::uint64_t(v);
}

inline std::uint32_t parse_u32(const std::string &key, const std::string &value)
{
    std::uint64_t v = parse_u64(key, value);
    if (v > 0xFFFFFFFFull)
        throw invalid_configuration("config: value for '" + key + "' exceeds 32 bits");
    return std::uint32_t(v);
}

inline double parse_double(const std::string &key, const std::string &value)
{
    if (value == "inf")
        return std::numeric_limits<double>::infinity();
    const char *begin = value.c_str();
    char *end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw invalid_configuration("config: bad number for '" + key + "': " + value);
    return v;
}

inline bool parse_bool(const std::string &key, const std::string &value)
{
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    throw invalid_configuration("config: bad boolean for '" + key + "': " + value);
}

inline std::string fmt_g9(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct TrialSeeds
{
    std::uint64_t channel, data, noise, pilot_noise;
};

inline TrialSeeds derive_trial_seeds(std::uint64_t base_seed, std::uint64_t trial_index)
{
    splitmix64 s(base_seed + trial_index); // wrapping add is intentional
    TrialSeeds t;
    t.channel = s.next();
    t.data = s.next();
    t.noise = s.next();
    t.pilot_noise = s.next();
    return t;
}

// Fixed unit-power 4-QAM pilots: user u (1-based id) owns the comb
// m ≡ u-1 (mod N_u) and sends constellation[(m + u - 1) % 4] there;
// other users' tones stay empty for that user.
inline std::vector<UserData> build_pilot_users(Eigen::Index n, std::uint32_t n_u)
{
    std::vector<cpx> c4 = qam_constellation(4);
    std::vector<UserData> pilots(n_u);
    for (std::uint32_t u = 0; u < n_u; ++u)
    {
        pilots[u].user_id = int(u + 1);
        pilots[u].modulation_order = 4;
        pilots[u].symbols = cvec::Zero(n);
        for (Eigen::Index m = Eigen::Index(u); m < n; m += Eigen::Index(n_u))
            pilots[u].symbols[m] = c4[std::size_t((std::uint64_t(m) + u) % 4)];
    }
    return pilots;
}
} // namespace detail

inline void validate_config(const SimConfig &cfg)
{
    if (cfg.n < 1 || cfg.n_r < 1 || cfg.n_u < 1 || cfg.l < 1)
        throw invalid_configuration("config: n, n_r, n_u and l must be positive");
    if (!qam_order_supported(cfg.m))
        throw invalid_configuration("config: unsupported modulation order " + std::to_string(cfg.m));
    if (cfg.snr_db.empty())
        throw invalid_configuration("config: snr_db list is empty");
    if (!(cfg.eps > 0.0))
        throw invalid_configuration("config: eps must be positive");
    if (!(cfg.rho >= 0.0 && cfg.rho < 1.0))
        throw invalid_configuration("config: rho must lie in [0, 1)");
    if (std::uint64_t(cfg.l) * cfg.n_u >= cfg.n)
        throw invalid_configuration("config: L*N_u must stay below N");
    if (cfg.n_u > cfg.n_r)
        throw invalid_configuration("config: N_u must not exceed N_r");
    if (cfg.pipelines.empty())
        throw invalid_configuration("config: pipeline list is empty");
    for (std::size_t i = 0; i < cfg.pipelines.size(); ++i)
    {
        const std::string &p = cfg.pipelines[i];
        if (p != "proposed" && p != "pca" && p != "uncompressed")
            throw invalid_configuration("config: unknown pipeline '" + p + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (cfg.pipelines[j] == p)
                throw invalid_configuration("config: duplicate pipeline '" + p + "'");
    }

    std::uint32_t k = cfg.antenna_subset == 0 ? cfg.n_r : cfg.antenna_subset;
    if (k > cfg.n_r)
        throw invalid_configuration("config: antenna_subset exceeds N_r");
    if (k < cfg.n_u)
        throw invalid_configuration("config: antenna_subset below N_u breaks zero forcing");

    for (const std::string &p : cfg.pipelines)
    {
        if (p == "proposed" && cfg.n_u == 1 && (cfg.l >= cfg.n || cfg.l >= cfg.n_r))
            throw invalid_configuration("config: SU compression needs L < min(N, N_r)");
        if (p == "pca")
        {
            std::uint64_t rank = cfg.n_u == 1 ? cfg.l : std::uint64_t(cfg.l) * cfg.n_u;
            if (rank > cfg.n || rank > cfg.n_r)
                throw invalid_configuration("config: PCA rank exceeds min(N, N_r)");
        }
    }
    // Resolve the profile now so a bad label/path fails before any trial.
    make_pdp(cfg.pdp, cfg.l);
}

// Parse plain-text key=value configuration ('#' starts a comment). Unknown
// keys are rejected so misspelled parameters cannot silently run defaults.
inline SimConfig parse_config(const std::string &text)
{
    SimConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_configuration("config: expected key=value, got '" + line + "'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw invalid_configuration("config: empty key or value in '" + line + "'");

        if (key == "n")
            cfg.n = detail::parse_u32(key, value);
        else if (key == "n_r")
            cfg.n_r = detail::parse_u32(key, value);
        else if (key == "n_u")
            cfg.n_u = detail::parse_u32(key, value);
        else if (key == "l")
            cfg.l = detail::parse_u32(key, value);
        else if (key == "m")
            cfg.m = detail::parse_u32(key, value);
        else if (key == "snr_db")
        {
            cfg.snr_db.clear();
            for (const std::string &item : detail::split_list(value))
                cfg.snr_db.push_back(detail::parse_double(key, item));
        }
        else if (key == "eps")
            cfg.eps = detail::parse_double(key, value);
        else if (key == "max_iter")
            cfg.max_iter = detail::parse_u32(key, value);
        else if (key == "rho")
            cfg.rho = detail::parse_double(key, value);
        else if (key == "pdp")
            cfg.pdp = value;
        else if (key == "antenna_subset")
            cfg.antenna_subset = detail::parse_u32(key, value);
        else if (key == "pipelines")
            cfg.pipelines = detail::split_list(value);
        else if (key == "trials")
            cfg.trials = detail::parse_u32(key, value);
        else if (key == "seed")
            cfg.seed = detail::parse_u64(key, value);
        else if (key == "genie")
            cfg.genie = detail::parse_bool(key, value);
        else
            throw invalid_configuration("config: unknown key '" + key + "'");
    }
    return cfg;
}

inline SimConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw invalid_configuration("cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace detail
{
struct TrialData
{
    std::vector<UserData> users;
    FrequencyGrid grid;
    ChannelEstimate estimate;
};

inline TrialData make_trial(const SimConfig &cfg, const PowerDelayProfile &pdp, double snr_db,
                            const TrialSeeds &seeds)
{
    TrialData t;
    ChannelRealization chan = draw_channel(pdp, cfg.n_r, cfg.n_u, cfg.rho, seeds.channel);

    std::mt19937_64 bit_eng(seeds.data);
    unsigned bits_per = qam_bits_per_symbol(cfg.m);
    t.users.reserve(cfg.n_u);
    for (std::uint32_t u = 0; u < cfg.n_u; ++u)
    {
        std::vector<std::uint8_t> bits(std::size_t(cfg.n) * bits_per);
        for (std::uint8_t &b : bits)
            b = std::uint8_t(bit_eng() & 1u); // raw engine bits: sequence is standard-pinned
        t.users.push_back(qam_modulate(bits, cfg.m, int(u + 1)));
    }

    t.grid = assemble_grid(t.users, chan, snr_db, seeds.noise);

    if (cfg.genie)
        t.estimate = genie_channel(chan, Eigen::Index(cfg.n));
    else
    {
        std::vector<UserData> pilots = build_pilot_users(Eigen::Index(cfg.n), cfg.n_u);
        FrequencyGrid pilot_grid = assemble_grid(pilots, chan, snr_db, seeds.pilot_noise);
        t.estimate = estimate_channel(pilot_grid, pilots, Eigen::Index(cfg.l));
    }
    return t;
}

inline EqualizedSymbols combine(const SimConfig &cfg, const FrequencyGrid &grid, const ChannelEstimate &est,
                                Eigen::Index k)
{
    return cfg.n_u == 1 ? mrc_combine(grid, est, k) : zf_equalize(grid, est, k);
}

// One pipeline on one trial: compress (if any), ship through the codec,
// reconstruct, equalize over the first K antennas, count errors.
inline SerFragment run_pipeline(const SimConfig &cfg, const std::string &pipeline, const TrialData &t,
                                Eigen::Index k)
{
    if (pipeline == "uncompressed")
        return compute_ser(combine(cfg, t.grid, t.estimate, k), t.users, cfg.m);

    FrequencyGrid bbu;
    if (pipeline == "proposed")
    {
        CompressedPayload p = cfg.n_u == 1
                                  ? compress_su(t.grid, Eigen::Index(cfg.l), cfg.eps, cfg.max_iter)
                                  : compress_mu(t.grid, Eigen::Index(cfg.l), Eigen::Index(cfg.n_u), cfg.eps,
                                                cfg.max_iter);
        p = restrict_antennas(std::move(p), k);
        bbu = reconstruct(std::get<CompressedPayload>(decode(encode(p))));
    }
    else // pca
    {
        Eigen::Index rank = cfg.n_u == 1 ? Eigen::Index(cfg.l) : Eigen::Index(cfg.l) * cfg.n_u;
        PcaPayload p = restrict_antennas(pca_compress(t.grid, rank), k);
        bbu = pca_reconstruct(std::get<PcaPayload>(decode(encode(p))));
    }
    return compute_ser(combine(cfg, bbu, t.estimate, k), t.users, cfg.m);
}
} // namespace detail

// Monte Carlo SER sweep. Trials failing with a library error are logged to
// stderr (with their seed) and skipped as a whole, so every surviving trial
// contributes to all pipelines symmetrically.
inline std::vector<SerRecord> run_sweep(const SimConfig &cfg)
{
    validate_config(cfg);
    if (cfg.trials == 0)
        return {};

    PowerDelayProfile pdp = make_pdp(cfg.pdp, cfg.l);
    const Eigen::Index k = Eigen::Index(cfg.antenna_subset == 0 ? cfg.n_r : cfg.antenna_subset);

    struct Bucket
    {
        std::uint64_t errors = 0, symbols = 0;
        std::uint32_t trials = 0;
    };
    std::vector<std::vector<Bucket>> buckets(cfg.pipelines.size(), std::vector<Bucket>(cfg.snr_db.size()));

    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si)
    {
        for (std::uint32_t trial = 0; trial < cfg.trials; ++trial)
        {
            detail::TrialSeeds seeds = detail::derive_trial_seeds(cfg.seed, trial);
            try
            {
                detail::TrialData t = detail::make_trial(cfg, pdp, cfg.snr_db[si], seeds);
                std::vector<SerFragment> frags;
                frags.reserve(cfg.pipelines.size());
                for (const std::string &pipeline : cfg.pipelines)
                    frags.push_back(detail::run_pipeline(cfg, pipeline, t, k));
                for (std::size_t pi = 0; pi < frags.size(); ++pi)
                {
                    buckets[pi][si].errors += frags[pi].total_errors;
                    buckets[pi][si].symbols += frags[pi].total_symbols;
                    buckets[pi][si].trials += 1;
                }
            }
            catch (const error &e)
            {
                std::cerr << "sweep: trial " << trial << " at " << detail::fmt_g9(cfg.snr_db[si])
                          << " dB discarded (seed base " << cfg.seed << "): " << e.what() << "\n";
            }
        }
    }

    std::vector<SerRecord> records;
    records.reserve(cfg.pipelines.size() * cfg.snr_db.size());
    for (std::size_t pi = 0; pi < cfg.pipelines.size(); ++pi)
        for (std::size_t si = 0; si < cfg.snr_db.size(); ++si)
        {
            const Bucket &b = buckets[pi][si];
            SerRecord r;
            r.pipeline = cfg.pipelines[pi];
            r.snr_db = cfg.snr_db[si];
            r.symbols = b.symbols;
            r.errors = b.errors;
            r.ser = b.symbols == 0 ? 0.0 : double(b.errors) / double(b.symbols);
            r.trials = b.trials;
            r.seed = cfg.seed;
            records.push_back(std::move(r));
        }
    return records;
}

inline std::string records_to_csv(const std::vector<SerRecord> &records)
{
    std::string csv = "pipeline,snr_db,symbols,errors,ser,trials,seed\n";
    for (const SerRecord &r : records)
    {
        csv += r.pipeline;
        csv += ',';
        csv += detail::fmt_g9(r.snr_db);
        csv += ',';
        csv += std::to_string(r.symbols);
        csv += ',';
        csv += std::to_string(r.errors);
        csv += ',';
        csv += detail::fmt_g9(r.ser);
        csv += ',';
        csv += std::to_string(r.trials);
        csv += ',';
        csv += std::to_string(r.seed);
        csv += '\n';
    }
    return csv;
}

struct CrTableRow
{
    std::string method; // "md" or "pca"
    std::string mode;   // "su" or "mu"
    std::uint64_t n, n_r, l, n_u;
    double cr;
};

// The eight published compression-ratio entries (N_r = 64, L = 12,
// N ∈ {1024, 4096}, N_u = 4 for MU).
inline std::vector<CrTableRow> cr_table_rows()
{
    const std::uint64_t n_r = 64, l = 12, n_u = 4;
    std::vector<CrTableRow> rows;
    for (std::uint64_t n : {std::uint64_t(1024), std::uint64_t(4096)})
        rows.push_back({"md", "su", n, n_r, l, 1, cr_su(n, n_r, l)});
    for (std::uint64_t n : {std::uint64_t(1024), std::uint64_t(4096)})
        rows.push_back({"pca", "su", n, n_r, l, 1, cr_su_pca(n, n_r, l)});
    for (std::uint64_t n : {std::uint64_t(1024), std::uint64_t(4096)})
        rows.push_back({"md", "mu", n, n_r, l, n_u, cr_mu(n, n_r, l, n_u)});
    for (std::uint64_t n : {std::uint64_t(1024), std::uint64_t(4096)})
        rows.push_back({"pca", "mu", n, n_r, l, n_u, cr_mu_pca(n, n_r, l, n_u)});
    return rows;
}

inline std::string reproduce_tables()
{
    std::string csv = "method,mode,n,n_r,l,n_u,cr\n";
    for (const CrTableRow &r : cr_table_rows())
    {
        csv += r.method;
        csv += ',';
        csv += r.mode;
        csv += ',';
        csv += std::to_string(r.n);
        csv += ',';
        csv += std::to_string(r.n_r);
        csv += ',';
        csv += std::to_string(r.l);
        csv += ',';
        csv += std::to_string(r.n_u);
        csv += ',';
        csv += detail::fmt_g9(r.cr);
        csv += '\n';
    }
    return csv;
}

// Residual trace of one compression instance built from the config (first
// SNR entry, trial 0 of the given seed). Row i is the relative residual
// after i iterations; row 0 is the initial 1.0.
inline std::string trace_convergence(const SimConfig &cfg, std::uint64_t seed)
{
    validate_config(cfg);
    PowerDelayProfile pdp = make_pdp(cfg.pdp, cfg.l);
    detail::TrialSeeds seeds = detail::derive_trial_seeds(seed, 0);
    detail::TrialData t = detail::make_trial(cfg, pdp, cfg.snr_db.front(), seeds);
    CompressedPayload p = cfg.n_u == 1
                              ? compress_su(t.grid, Eigen::Index(cfg.l), cfg.eps, cfg.max_iter)
                              : compress_mu(t.grid, Eigen::Index(cfg.l), Eigen::Index(cfg.n_u), cfg.eps,
                                            cfg.max_iter);
    std::string csv = "iteration,residual\n";
    for (std::size_t i = 0; i < p.residual_trace.size(); ++i)
    {
        csv += std::to_string(i);
        csv += ',';
        csv += detail::fmt_g9(p.residual_trace[i]);
        csv += '\n';
    }
    return csv;
}

} // namespace mdfh
