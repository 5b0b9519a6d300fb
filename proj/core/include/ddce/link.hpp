// SPDX-License-Identifier: Apache-2.0
//
// ddce - delay-Doppler channel estimation and link-level simulation
// Copyright (C) 2026 The ddce authors
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

#include <cstdint>
#include <vector>

#include "ddce/channel.hpp"
#include "ddce/config.hpp"
#include "ddce/rng.hpp"

namespace ddce {

// One transmitted multi-slot frame and its passage through the channel.
struct Frame {
    cmat X;                                       // M_o x n_symbols
    std::vector<std::vector<std::uint8_t>> bits;  // per symbol, empty for SRS symbols
    cvec s;                                       // serialized transmit samples
    ChannelRealization channel;
    DelayTimeResponse truth;                      // L x n_samples
    cvec r;                                       // received samples
};

// Draw order: channel, data bits (symbol by symbol), noise.
Frame simulate_frame(const SimConfig& cfg, Rng& rng);

// Truth CIRs for the CP-stripped window of symbol n_o (L x M_o).
cmat truth_slice(const Frame& f, int n_o, const SimConfig& cfg);

} // namespace ddce
