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
#include "ddce/dd_estimator.hpp"
#include "ddce/numerics.hpp"

namespace ddce {

struct BemModel {
    double upsilon_max = 0.0;
    int Q = 0;
    double T_s = 0.0;
    cmat A_hat;          // L x (Q+1), column i <-> q = i - Q/2
    int fit_rank = 0;
    bool underdetermined = false;

    double grid_doppler(int i) const;
};

// Doppler grid 2 upsilon_max q / Q for q = -Q/2..Q/2.
std::vector<double> doppler_grid(double upsilon_max, int Q);

// Row i, column j: exp(j2pi grid[i] t_j T_s).
cmat build_phi(const std::vector<double>& sample_indices, double upsilon_max, int Q, double T_s);
cmat build_phi(long start, long count, double upsilon_max, int Q, double T_s);

BemModel estimate_gains(const CirStack& stack, double upsilon_max, int Q, double T_s,
                        double rel_tol = 1e-2);
// Fit from an explicit Phi_RS built on the stack's time indices.
BemModel estimate_gains(const CirStack& stack, const cmat& phi_rs, double upsilon_max, int Q,
                        double T_s, double rel_tol = 1e-2);

DelayTimeResponse predict(const BemModel& model, long start, long count);
cmat predict(const BemModel& model, const std::vector<double>& sample_indices);

} // namespace ddce
