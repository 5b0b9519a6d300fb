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

#include "ddce/bem.hpp"

#include <cmath>
#include <stdexcept>

namespace ddce {

namespace {

void check_grid(double upsilon_max, int Q) {
    if (Q < 0 || Q % 2 != 0) throw std::invalid_argument("bem: Q must be even and non-negative");
    if (Q == 0 && upsilon_max > 0.0)
        throw std::invalid_argument("bem: Q = 0 only describes a static channel");
    if (upsilon_max < 0.0) throw std::invalid_argument("bem: negative maximum Doppler");
}

} // namespace

double BemModel::grid_doppler(int i) const { return doppler_grid(upsilon_max, Q).at(i); }

std::vector<double> doppler_grid(double upsilon_max, int Q) {
    check_grid(upsilon_max, Q);
    std::vector<double> g;
    if (Q == 0) return {0.0};
    for (int q = -Q / 2; q <= Q / 2; ++q) g.push_back(2.0 * upsilon_max * q / Q);
    return g;
}

cmat build_phi(const std::vector<double>& sample_indices, double upsilon_max, int Q, double T_s) {
    const auto grid = doppler_grid(upsilon_max, Q);
    cmat phi(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(sample_indices.size()));
    for (size_t i = 0; i < grid.size(); ++i) {
        const double w = 2.0 * kPi * grid[i] * T_s;
        for (size_t j = 0; j < sample_indices.size(); ++j)
            phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::polar(1.0, w * sample_indices[j]);
    }
    return phi;
}

cmat build_phi(long start, long count, double upsilon_max, int Q, double T_s) {
    std::vector<double> t(static_cast<size_t>(count));
    for (long k = 0; k < count; ++k) t[k] = static_cast<double>(start + k);
    return build_phi(t, upsilon_max, Q, T_s);
}

BemModel estimate_gains(const CirStack& stack, const cmat& phi_rs, double upsilon_max, int Q,
                        double T_s, double rel_tol) {
    if (stack.empty()) throw std::logic_error("estimate_gains: empty stack");
    check_grid(upsilon_max, Q);
    if (phi_rs.cols() != stack.size() || phi_rs.rows() != Q + 1)
        throw std::invalid_argument("estimate_gains: phi_rs shape does not match stack and grid");
    const PinvResult p = pinv(phi_rs, rel_tol);
    BemModel m;
    m.upsilon_max = upsilon_max;
    m.Q = Q;
    m.T_s = T_s;
    m.A_hat = stack.H_dt * p.pinv;
    m.fit_rank = p.rank;
    m.underdetermined = stack.size() < Q + 1;
    return m;
}

BemModel estimate_gains(const CirStack& stack, double upsilon_max, int Q, double T_s, double rel_tol) {
    if (stack.empty()) throw std::logic_error("estimate_gains: empty stack");
    return estimate_gains(stack, build_phi(stack.time_indices, upsilon_max, Q, T_s), upsilon_max, Q,
                          T_s, rel_tol);
}

DelayTimeResponse predict(const BemModel& model, long start, long count) {
    DelayTimeResponse r;
    r.offset = start;
    r.H = model.A_hat * build_phi(start, count, model.upsilon_max, model.Q, model.T_s);
    return r;
}

cmat predict(const BemModel& model, const std::vector<double>& sample_indices) {
    return model.A_hat * build_phi(sample_indices, model.upsilon_max, model.Q, model.T_s);
}

} // namespace ddce
