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

#include "ddce/dd_transform.hpp"

#include <stdexcept>

namespace ddce {

DDGrid DDGrid::from_vec(const cvec& v, int M, int N, int symbol_index) {
    if (v.size() != static_cast<Eigen::Index>(M) * N)
        throw std::invalid_argument("DDGrid::from_vec: length must be M*N");
    DDGrid g;
    g.y = Eigen::Map<const cmat>(v.data(), M, N);
    g.symbol_index = symbol_index;
    return g;
}

namespace {

void check(const cvec& x, int M, int N) {
    if (M <= 0 || N <= 0 || x.size() != static_cast<Eigen::Index>(M) * N)
        throw std::invalid_argument("dd transform: input length must be M*N");
}

double phase_step(int M, int N) { return 2.0 * kPi / (static_cast<double>(M) * N); }

} // namespace

DDGrid tf_to_dd_sc(const cvec& y_freq, int M, int N) {
    check(y_freq, M, N);
    DDGrid g;
    g.y.resize(M, N);
    cvec sub(M);
    const double w = phase_step(M, N);
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < M; ++m) sub(m) = y_freq(static_cast<Eigen::Index>(m) * N + n);
        const cvec t = idft(sub, M);
        for (int m = 0; m < M; ++m) g.y(m, n) = t(m) * std::polar(1.0, w * m * n);
    }
    return g;
}

DDGrid tf_to_dd_sc(const cvec& y_freq, const SimConfig& cfg) { return tf_to_dd_sc(y_freq, cfg.M, cfg.N); }

cvec dd_to_tf_sc(const DDGrid& g) {
    const int M = g.M();
    const int N = g.N();
    cvec out(static_cast<Eigen::Index>(M) * N);
    cvec t(M);
    const double w = phase_step(M, N);
    for (int n = 0; n < N; ++n) {
        for (int m = 0; m < M; ++m) t(m) = g.y(m, n) * std::polar(1.0, -w * m * n);
        const cvec f = dft(t, M);
        for (int m = 0; m < M; ++m) out(static_cast<Eigen::Index>(m) * N + n) = f(m);
    }
    return out;
}

DDGrid tf_to_dd_otfs(const cvec& r_time_no_cp, int M, int N) {
    check(r_time_no_cp, M, N);
    return DDGrid::from_vec(kron_apply_fn_im(r_time_no_cp, M, N, false), M, N);
}

DDGrid tf_to_dd_otfs(const cvec& r_time_no_cp, const SimConfig& cfg) {
    return tf_to_dd_otfs(r_time_no_cp, cfg.M, cfg.N);
}

DDGrid pilot_to_dd(const cvec& x_freq, const SimConfig& cfg) { return tf_to_dd_sc(x_freq, cfg.M, cfg.N); }

} // namespace ddce
