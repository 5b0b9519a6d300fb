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

#include "ddce/bem.hpp"
#include "ddce/config.hpp"
#include "ddce/dd_estimator.hpp"
#include "ddce/equalizer.hpp"

namespace ddce {

// CP-stripped samples of symbol n_o from a serialized received frame.
cvec strip_symbol(const cvec& r, int n_o, const SimConfig& cfg);

// Data symbols sorted by distance to the nearest SRS symbol. Equal distances
// put symbols that follow their nearest SRS block first, then the earlier index,
// so the first symbol after an SRS block leads the order.
std::vector<int> detection_order(const SimConfig& cfg);

// Gamma solver for the (fixed) SRS symbol.
GammaSolver srs_gamma_solver(const SimConfig& cfg);

struct SequentialState {
    CirStack stack;
    BemModel model;
    std::vector<int> processed;
    int rank_warnings = 0;
};

SequentialState initial_fit(const cvec& r, const SimConfig& cfg, const GammaSolver& srs_solver);
SequentialState initial_fit(const cvec& r, const SimConfig& cfg);

// BEM fit from the stack. With cfg.cir_window > 0 only the CIRs closest to
// centre_time enter the fit.
BemModel fit_bem(const CirStack& stack, const SimConfig& cfg, double centre_time = 0.0);

struct StepOutput {
    EqualizedSymbol eq;
    cmat slice;          // L x M_o channel estimate used for detection
    SymbolCirs new_cirs; // virtual-pilot CIRs appended to the stack
};

// Predict, equalize, decide, re-estimate from the decisions and refit. When
// virtual_pilot is given it replaces the hard decisions (genie runs).
StepOutput step(SequentialState& state, const cvec& r, int n_o, const SimConfig& cfg,
                const cvec* virtual_pilot = nullptr);

} // namespace ddce
