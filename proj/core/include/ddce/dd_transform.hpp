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

#include "ddce/config.hpp"
#include "ddce/numerics.hpp"

namespace ddce {

struct DDGrid {
    cmat y;               // M x N, column n is delay block n
    int symbol_index = -1;

    int M() const { return static_cast<int>(y.rows()); }
    int N() const { return static_cast<int>(y.cols()); }
    cvec vec() const { return Eigen::Map<const cvec>(y.data(), y.size()); }
    static DDGrid from_vec(const cvec& v, int M, int N, int symbol_index = -1);
};

// Phase-compensated DFT-s-OFDM path: per block n, take subcarriers n, n+N, ...,
// M-point IDFT, then multiply by exp(j2pi m n / (M N)).
DDGrid tf_to_dd_sc(const cvec& y_freq, int M, int N);
DDGrid tf_to_dd_sc(const cvec& y_freq, const SimConfig& cfg);

// Inverse of tf_to_dd_sc.
cvec dd_to_tf_sc(const DDGrid& g);

// (F_N kron I_M) applied to a CP-stripped time-domain symbol.
DDGrid tf_to_dd_otfs(const cvec& r_time_no_cp, int M, int N);
DDGrid tf_to_dd_otfs(const cvec& r_time_no_cp, const SimConfig& cfg);

// Transmit-side transform of a frequency-domain symbol; same kernel as tf_to_dd_sc.
DDGrid pilot_to_dd(const cvec& x_freq, const SimConfig& cfg);

} // namespace ddce
