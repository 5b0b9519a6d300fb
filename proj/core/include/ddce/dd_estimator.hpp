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

#include "ddce/channel.hpp"
#include "ddce/config.hpp"
#include "ddce/dd_transform.hpp"
#include "ddce/numerics.hpp"

namespace ddce {

// Reduced data matrix: block (r, c) is the first L columns of
// circ(x_d) .* U_d with d = (r - c) mod N and [U_d]_{m,m'} = exp(-j2pi d/N) for m < m'.
struct GammaMatrix {
    cmat G;              // M_o x (N L)
    int M = 0, N = 0, L = 0;
    int symbol_index = -1;
};

GammaMatrix build_gamma(const DDGrid& x_dd, int L);

// Dense DD channel matrix: block (r, c) is circ([h_{(r-c) mod N}; 0]) .* U_c.
// h_dd is L x N (column n = Doppler block n).
cmat build_dense_Hdd(const cmat& h_dd, int M, int N);

// Least-squares solver for one Gamma. Gamma is block circulant, so the DFT
// across blocks splits it into N independent M x L problems; the truncated
// pseudoinverse of the pieces equals the truncated pseudoinverse of Gamma.
class GammaSolver {
  public:
    GammaSolver() = default;
    GammaSolver(const DDGrid& x_dd, int L, double rel_tol = 1e-10);

    // Returns L x N, column n = Doppler block n.
    cmat solve(const cvec& y_vec) const;
    cvec apply(const cmat& h_dd) const; // Gamma * vec(h_dd)

    int rank() const { return rank_; }
    int full_rank() const { return N_ * L_; }
    double condition() const { return cond_; }
    const rvec& singular_values() const { return sv_; }
    int M() const { return M_; }
    int N() const { return N_; }
    int L() const { return L_; }

  private:
    int M_ = 0, N_ = 0, L_ = 0;
    std::vector<cmat> D_;      // M x L per DFT bin
    std::vector<cmat> D_pinv_; // L x M per DFT bin
    rvec sv_;
    int rank_ = 0;
    double cond_ = 0.0;
};

struct DdCirEstimate {
    cmat h_dd;           // L x N
    double residual = 0.0;
    int rank = 0;
    double condition = 0.0;
    bool rank_deficient = false;
};

DdCirEstimate estimate_dd_cir(const DDGrid& y_dd, const GammaMatrix& gamma, double rel_tol = 1e-10);
DdCirEstimate estimate_dd_cir(const DDGrid& y_dd, const GammaSolver& solver);

// h_dd holds per-Doppler block averages, so 𝓗 = sqrt(N) h_dd F_N^H.
cmat dd_to_delay_time(const cmat& h_dd);
cmat delay_time_to_dd(const cmat& H_blocks);

// Estimated CIR columns tagged with (fractional) absolute sample times,
// kept sorted by time.
struct CirStack {
    cmat H_dt;           // L x n
    std::vector<double> time_indices;

    int size() const { return static_cast<int>(time_indices.size()); }
    bool empty() const { return time_indices.empty(); }
    void append(const cmat& cirs, const std::vector<double>& times);
};

// Centre sample of delay block n of symbol n_o. The LS estimate is the block
// average, which a linear phasor model puts at the centre.
double block_time(int n_o, int n, const SimConfig& cfg);
std::vector<double> block_times(int n_o, const SimConfig& cfg);
double symbol_centre_time(int n_o, const SimConfig& cfg);

// First sample of symbol n_o after the CP.
long symbol_start(int n_o, const SimConfig& cfg);

// Per-tap linear interpolation, constant beyond the ends.
cmat interpolate_cirs(const CirStack& stack, const std::vector<double>& targets);
DelayTimeResponse interpolate_cirs(const CirStack& stack, long start, long count);

// Comb LS + short IDFT + truncation to L taps; one CIR per symbol at its centre.
CirStack fd_baseline_estimate(const std::vector<cvec>& y_freq, const std::vector<int>& symbols,
                              const cvec& pilot_freq, const SimConfig& cfg);

// DD estimate of the N block CIRs of one received symbol (CP stripped).
struct SymbolCirs {
    cmat cirs;           // L x N delay-time
    std::vector<double> times;
    DdCirEstimate detail;
};
SymbolCirs estimate_symbol_cirs(const cvec& r_no_cp, int n_o, const GammaSolver& solver,
                                const SimConfig& cfg);

} // namespace ddce
