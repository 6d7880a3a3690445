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
// Umbrella header: pulls in the whole library.

#pragma once

#include "channel.hpp"
#include "codec.hpp"
#include "compressor.hpp"
#include "dft.hpp"
#include "errors.hpp"
#include "grid_io.hpp"
#include "pca.hpp"
#include "pdp.hpp"
#include "qam.hpp"
#include "recovery.hpp"
#include "rng.hpp"
#include "signal_model.hpp"
#include "sim.hpp"
#include "types.hpp"
