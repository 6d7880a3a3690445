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

#include <stdexcept>
#include <string>

namespace mdfh
{

// Base class of every exception thrown by this library.
class error : public std::runtime_error
{
  public:
    explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

// A parameter set violates an operation's preconditions (bad sizes, bad
// modulation order, out-of-range correlation, unknown config keys, ...).
class invalid_configuration : public error
{
  public:
    explicit invalid_configuration(const std::string &msg) : error("invalid configuration: " + msg) {}
};

// Structurally valid input whose content makes the operation meaningless
// (all-zero received matrix, dead pilot tones, no usable reference entries).
class degenerate_input : public error
{
  public:
    explicit degenerate_input(const std::string &msg) : error("degenerate input: " + msg) {}
};

// A linear system that must be solved exactly is numerically singular.
class rank_deficiency : public error
{
  public:
    explicit rank_deficiency(const std::string &msg) : error("rank deficiency: " + msg) {}
};

// Reason a serialized fronthaul frame was rejected.
enum class frame_error_kind
{
    bad_magic,      // leading bytes are not the frame magic
    bad_version,    // unsupported format version
    bad_mode,       // mode field is not SU/MU/PCA
    bad_dimensions, // header dimensions are zero, inconsistent or absurd
    truncated,      // stream shorter than the declared payload
    trailing_data   // stream longer than the declared payload
};

// A byte stream failed to parse as a fronthaul frame.
class frame_error : public error
{
  public:
    frame_error(frame_error_kind kind, const std::string &msg) : error("malformed frame: " + msg), m_kind(kind) {}

    [[nodiscard]] frame_error_kind kind() const noexcept { return m_kind; }

  private:
    frame_error_kind m_kind;
};

} // namespace mdfh
