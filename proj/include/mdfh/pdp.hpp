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
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mdfh
{

// Average linear power per multipath tap; always normalized to unit total
// power so that the frequency-domain channel has unit average energy.
struct PowerDelayProfile
{
    std::vector<double> tap_powers; // length L, sums to 1
    std::string label;

    [[nodiscard]] std::size_t n_taps() const { return tap_powers.size(); }
};

namespace detail
{
inline PowerDelayProfile normalize_pdp(std::vector<double> powers, std::string label)
{
    if (powers.empty())
        throw invalid_configuration("power-delay profile needs at least one tap");
    double sum = 0.0;
    for (double p : powers)
    {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw invalid_configuration("power-delay profile taps must be finite and nonnegative");
        sum += p;
    }
    if (sum <= 0.0)
        throw invalid_configuration("power-delay profile has zero total power");
    for (double &p : powers)
        p /= sum;
    return {std::move(powers), std::move(label)};
}
} // namespace detail

// Flat profile: every tap carries power 1/L.
inline PowerDelayProfile uniform_pdp(std::size_t L)
{
    return detail::normalize_pdp(std::vector<double>(L, 1.0), "uniform");
}

// Exponentially decaying profile, 3 dB less power per tap — a tapped-delay-line
// stand-in for short-delay-spread channels with a dominant first arrival.
inline PowerDelayProfile exp3db_pdp(std::size_t L)
{
    std::vector<double> p(L);
    for (std::size_t i = 0; i < L; ++i)
        p[i] = std::pow(10.0, -0.3 * double(i));
    return detail::normalize_pdp(std::move(p), "exp3db");
}

// Load a profile from a plain-text key=value file:
//
//   L  = 3
//   p0 = 1.0
//   p1 = 0.5
//   p2 = 0.25
//
// Lines starting with '#' are comments. Powers are linear and are
// normalized on load.
inline PowerDelayProfile load_pdp(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw invalid_configuration("cannot open power-delay profile file '" + path + "'");

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line))
    {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
        {
            if (line.find_first_not_of(" \t\r\n") != std::string::npos)
                throw invalid_configuration("bad line in profile file '" + path + "': " + line);
            continue;
        }
        auto trim = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r\n");
            std::size_t b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    auto it = kv.find("L");
    if (it == kv.end())
        throw invalid_configuration("profile file '" + path + "' is missing key L");
    std::size_t L = 0;
    try
    {
        L = std::stoul(it->second);
    }
    catch (const std::exception &)
    {
        throw invalid_configuration("profile file '" + path + "': L is not a number");
    }
    if (L == 0 || kv.size() != L + 1)
        throw invalid_configuration("profile file '" + path + "' must contain exactly L power entries p0..p" +
                                    std::to_string(L == 0 ? 0 : L - 1));

    std::vector<double> powers(L);
    for (std::size_t i = 0; i < L; ++i)
    {
        auto pit = kv.find("p" + std::to_string(i));
        if (pit == kv.end())
            throw invalid_configuration("profile file '" + path + "' is missing key p" + std::to_string(i));
        try
        {
            powers[i] = std::stod(pit->second);
        }
        catch (const std::exception &)
        {
            throw invalid_configuration("profile file '" + path + "': p" + std::to_string(i) + " is not a number");
        }
    }

    std::string stem = path;
    std::size_t slash = stem.find_last_of("/\\");
    if (slash != std::string::npos)
        stem = stem.substr(slash + 1);
    return detail::normalize_pdp(std::move(powers), stem);
}

// Resolve a profile by built-in label ("uniform", "exp3db") with L taps, or
// load it from a file path. A file's tap count must match the requested L.
inline PowerDelayProfile make_pdp(const std::string &label_or_path, std::size_t L)
{
    if (label_or_path == "uniform")
        return uniform_pdp(L);
    if (label_or_path == "exp3db")
        return exp3db_pdp(L);
    PowerDelayProfile p = load_pdp(label_or_path);
    if (p.n_taps() != L)
        throw invalid_configuration("profile '" + label_or_path + "' has " + std::to_string(p.n_taps()) +
                                    " taps, expected L=" + std::to_string(L));
    return p;
}

} // namespace mdfh
