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

#include <vector>

#include "ddce/config.hpp"
#include "ddce/numerics.hpp"
#include "ddce/rng.hpp"

namespace ddce {

struct ChannelPath {
    cd gain;
    int delay_tap = 0;
    double doppler = 0.0; // Hz
};

struct ChannelRealization {
    std::vector<ChannelPath> paths;
    int L = 0;
};

// L x K matrix; column j is the CIR at absolute sample offset + j.
struct DelayTimeResponse {
    cmat H;
    long offset = 0;
    int L() const { return static_cast<int>(H.rows()); }
    long K() const { return static_cast<long>(H.cols()); }
};

struct TdlTap {
    double normalized_delay;
    double power_db;
};

// TDL-C profile (normalized delay, power dB) from 3GPP TR 38.901 Table 7.7.2-3.
const std::vector<TdlTap>& tdlc_profile();

// Merged integer-tap power profile (sums to 1) for a response of L taps.
std::vector<std::pair<int, double>> tdlc_tap_powers(int L);

ChannelRealization sample_tdlc(const SimConfig& cfg, Rng& rng);

DelayTimeResponse materialize_response(const ChannelRealization& ch, long K, double T_s,
                                       long offset = 0);

// Time-varying convolution with zero history before sample 0, plus AWGN.
cvec apply_channel(const cvec& s, const DelayTimeResponse& H, double sigma2, Rng& rng);

// Dense banded K x K channel matrix; test oracle and small instances only.
cmat build_dense_H(const DelayTimeResponse& H);

} // namespace ddce
