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

#include <Eigen/SparseCore>

#include "ddce/config.hpp"
#include "ddce/numerics.hpp"

namespace ddce {

using spmat = Eigen::SparseMatrix<cd>;

struct EqualizedSymbol {
    cvec x_hat;
    cvec hard_syms;
    int symbol_index = -1;
    bool pinv_fallback = false; // sigma2 == 0 with a singular channel
};

// slice is L x M_o: column k is the CIR at CP-stripped sample k of the symbol.
// Returns the quasi-circulant time-domain matrix, [H]_{k,(k-l) mod M_o} = slice(l, k).
spmat time_domain_matrix(const cmat& slice);

// Frequency-domain equivalent channel F H F^H.
cmat reconstruct_h_ofdm(const cmat& slice);

// (H^H H + sigma2 I)^{-1} H^H y, then nearest-point decisions.
EqualizedSymbol mmse_equalize(const cvec& y_freq, const cmat& H_ofdm, double sigma2, int qam_order);

// Same estimate computed in the time domain with a sparse Cholesky factor;
// the unitary DFT makes the two exactly equivalent.
EqualizedSymbol mmse_equalize_banded(const cvec& y_freq, const cmat& slice, double sigma2, int qam_order);

EqualizedSymbol equalize(const cvec& y_freq, const cmat& slice, double sigma2, int qam_order,
                         EqualizerKind kind);

} // namespace ddce
