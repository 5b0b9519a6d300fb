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

#include "ddce/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "ddce/dd_transform.hpp"
#include "ddce/waveform.hpp"

namespace ddce {

cvec strip_symbol(const cvec& r, int n_o, const SimConfig& cfg) {
    const long start = symbol_start(n_o, cfg);
    if (n_o < 0 || start + cfg.M_o > r.size()) throw std::invalid_argument("strip_symbol: symbol outside frame");
    return r.segment(start, cfg.M_o);
}

std::vector<int> detection_order(const SimConfig& cfg) {
    const auto srs = cfg.srs_symbols();
    auto data = cfg.data_symbols();
    if (srs.empty()) return data;
    auto key = [&](int n) {
        int dist = cfg.n_symbols();
        for (int s : srs) dist = std::min(dist, std::abs(n - s));
        const bool follows = std::find(srs.begin(), srs.end(), n - dist) != srs.end();
        return std::make_tuple(dist, follows ? 0 : 1, n);
    };
    std::sort(data.begin(), data.end(), [&](int a, int b) { return key(a) < key(b); });
    return data;
}

GammaSolver srs_gamma_solver(const SimConfig& cfg) {
    return GammaSolver(pilot_to_dd(srs_symbol_freq(cfg), cfg), cfg.L, cfg.gamma_rel_tol);
}

BemModel fit_bem(const CirStack& stack, const SimConfig& cfg, double centre_time) {
    const double vmax = cfg.upsilon_max();
    const int Q = vmax > 0.0 ? cfg.Q : 0;
    if (cfg.cir_window <= 0 || stack.size() <= cfg.cir_window)
        return estimate_gains(stack, vmax, Q, cfg.T_s(), cfg.bem_rel_tol);
    std::vector<int> idx(static_cast<size_t>(stack.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(stack.time_indices[a] - centre_time) < std::abs(stack.time_indices[b] - centre_time);
    });
    idx.resize(static_cast<size_t>(cfg.cir_window));
    std::sort(idx.begin(), idx.end());
    CirStack sub;
    sub.H_dt.resize(stack.H_dt.rows(), cfg.cir_window);
    for (int j = 0; j < cfg.cir_window; ++j) {
        sub.H_dt.col(j) = stack.H_dt.col(idx[j]);
        sub.time_indices.push_back(stack.time_indices[idx[j]]);
    }
    return estimate_gains(sub, vmax, Q, cfg.T_s(), cfg.bem_rel_tol);
}

SequentialState initial_fit(const cvec& r, const SimConfig& cfg, const GammaSolver& srs_solver) {
    const auto srs = cfg.srs_symbols();
    if (srs.empty()) throw std::logic_error("initial_fit: configuration has no SRS symbols");
    SequentialState st;
    for (int n : srs) {
        const SymbolCirs c = estimate_symbol_cirs(strip_symbol(r, n, cfg), n, srs_solver, cfg);
        if (c.detail.rank_deficient) ++st.rank_warnings;
        st.stack.append(c.cirs, c.times);
    }
    st.model = fit_bem(st.stack, cfg);
    return st;
}

SequentialState initial_fit(const cvec& r, const SimConfig& cfg) {
    return initial_fit(r, cfg, srs_gamma_solver(cfg));
}

StepOutput step(SequentialState& st, const cvec& r, int n_o, const SimConfig& cfg, const cvec* virtual_pilot) {
    if (cfg.is_srs_symbol(n_o)) throw std::invalid_argument("step: symbol carries SRS");
    if (std::find(st.processed.begin(), st.processed.end(), n_o) != st.processed.end())
        throw std::logic_error("step: symbol already processed");
    StepOutput out;
    const long start = symbol_start(n_o, cfg);
    const BemModel model = cfg.cir_window > 0 ? fit_bem(st.stack, cfg, symbol_centre_time(n_o, cfg)) : st.model;
    out.slice = predict(model, start, cfg.M_o).H;

    const cvec r_sym = strip_symbol(r, n_o, cfg);
    const cvec y = dft(r_sym, cfg.M_o);
    out.eq = equalize(y, out.slice, cfg.sigma2(), cfg.qam_order, cfg.equalizer);
    out.eq.symbol_index = n_o;

    const cvec& xd = virtual_pilot ? *virtual_pilot : out.eq.hard_syms;
    const GammaSolver solver(pilot_to_dd(xd, cfg), cfg.L, cfg.gamma_rel_tol);
    out.new_cirs = estimate_symbol_cirs(r_sym, n_o, solver, cfg);
    if (out.new_cirs.detail.rank_deficient) ++st.rank_warnings;
    st.stack.append(out.new_cirs.cirs, out.new_cirs.times);
    st.model = fit_bem(st.stack, cfg, symbol_centre_time(n_o, cfg));
    st.processed.push_back(n_o);
    return out;
}

} // namespace ddce
