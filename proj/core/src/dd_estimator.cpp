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

#include "ddce/dd_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ddce {

namespace {

// First L columns of circ(x) .* U_d.
cmat gamma_piece(const cvec& x, int d, int N, int L) {
    const int M = static_cast<int>(x.size());
    const cd ph = std::polar(1.0, -2.0 * kPi * d / N);
    cmat C(M, L);
    for (int l = 0; l < L; ++l)
        for (int m = 0; m < M; ++m) {
            const cd v = x((m - l + M) % M);
            C(m, l) = m < l ? v * ph : v;
        }
    return C;
}

} // namespace

GammaMatrix build_gamma(const DDGrid& x_dd, int L) {
    const int M = x_dd.M();
    const int N = x_dd.N();
    if (L <= 0 || L > M) throw std::invalid_argument("build_gamma: L must lie in [1, M]");
    std::vector<cmat> C;
    for (int d = 0; d < N; ++d) C.push_back(gamma_piece(x_dd.y.col(d), d, N, L));
    GammaMatrix g;
    g.M = M;
    g.N = N;
    g.L = L;
    g.symbol_index = x_dd.symbol_index;
    g.G = cmat::Zero(static_cast<Eigen::Index>(M) * N, static_cast<Eigen::Index>(N) * L);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c)
            g.G.block(static_cast<Eigen::Index>(r) * M, static_cast<Eigen::Index>(c) * L, M, L) =
                C[((r - c) % N + N) % N];
    return g;
}

cmat build_dense_Hdd(const cmat& h_dd, int M, int N) {
    const int L = static_cast<int>(h_dd.rows());
    if (h_dd.cols() != N || L > M) throw std::invalid_argument("build_dense_Hdd: shape mismatch");
    const Eigen::Index Mo = static_cast<Eigen::Index>(M) * N;
    cmat H = cmat::Zero(Mo, Mo);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            const int d = ((r - c) % N + N) % N;
            const cd ph = std::polar(1.0, -2.0 * kPi * c / N);
            for (int m = 0; m < M; ++m)
                for (int mp = 0; mp < M; ++mp) {
                    const int lag = ((m - mp) % M + M) % M;
                    if (lag >= L) continue;
                    const cd v = h_dd(lag, d);
                    H(static_cast<Eigen::Index>(r) * M + m, static_cast<Eigen::Index>(c) * M + mp) =
                        m < mp ? v * ph : v;
                }
        }
    return H;
}

GammaSolver::GammaSolver(const DDGrid& x_dd, int L, double rel_tol)
    : M_(x_dd.M()), N_(x_dd.N()), L_(L) {
    if (L <= 0 || L > M_) throw std::invalid_argument("GammaSolver: L must lie in [1, M]");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("GammaSolver: rel_tol must be positive");
    std::vector<cmat> C;
    for (int d = 0; d < N_; ++d) C.push_back(gamma_piece(x_dd.y.col(d), d, N_, L));

    // Tall pieces: QR first, then a small SVD of the L x L factor.
    struct Piece {
        cmat Q;
        Eigen::BDCSVD<cmat> svd;
    };
    std::vector<Piece> pieces;
    double smax = 0.0;
    sv_.resize(static_cast<Eigen::Index>(N_) * L_);
    for (int k = 0; k < N_; ++k) {
        cmat D = cmat::Zero(M_, L_);
        for (int d = 0; d < N_; ++d) D += std::polar(1.0, -2.0 * kPi * k * d / N_) * C[d];
        Eigen::HouseholderQR<cmat> qr(D);
        const cmat R = qr.matrixQR().topRows(L_).triangularView<Eigen::Upper>();
        Piece p{qr.householderQ() * cmat::Identity(M_, L_), Eigen::BDCSVD<cmat>(R, Eigen::ComputeFullU | Eigen::ComputeFullV)};
        sv_.segment(static_cast<Eigen::Index>(k) * L_, L_) = p.svd.singularValues();
        smax = std::max(smax, p.svd.singularValues()(0));
        pieces.push_back(std::move(p));
        D_.push_back(std::move(D));
    }
    const double cut = rel_tol * smax;
    rank_ = 0;
    for (const auto& p : pieces) {
        const rvec& s = p.svd.singularValues();
        rvec inv = rvec::Zero(s.size());
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > cut && s(i) > 0.0) {
                inv(i) = 1.0 / s(i);
                ++rank_;
            }
        D_pinv_.push_back(p.svd.matrixV() * inv.asDiagonal() * (p.Q * p.svd.matrixU()).adjoint());
    }
    std::sort(sv_.data(), sv_.data() + sv_.size(), std::greater<double>());
    const double smin = sv_(sv_.size() - 1);
    cond_ = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

cmat GammaSolver::solve(const cvec& y_vec) const {
    if (y_vec.size() != static_cast<Eigen::Index>(M_) * N_)
        throw std::invalid_argument("GammaSolver::solve: length must be M*N");
    const cvec z = kron_apply_fn_im(y_vec, M_, N_, false);
    cvec u(static_cast<Eigen::Index>(L_) * N_);
    for (int k = 0; k < N_; ++k)
        u.segment(static_cast<Eigen::Index>(k) * L_, L_).noalias() =
            D_pinv_[k] * z.segment(static_cast<Eigen::Index>(k) * M_, M_);
    const cvec h = kron_apply_fn_im(u, L_, N_, true);
    return Eigen::Map<const cmat>(h.data(), L_, N_);
}

cvec GammaSolver::apply(const cmat& h_dd) const {
    if (h_dd.rows() != L_ || h_dd.cols() != N_) throw std::invalid_argument("GammaSolver::apply: shape");
    const cvec hv = Eigen::Map<const cvec>(h_dd.data(), h_dd.size());
    const cvec u = kron_apply_fn_im(hv, L_, N_, false);
    cvec z(static_cast<Eigen::Index>(M_) * N_);
    for (int k = 0; k < N_; ++k)
        z.segment(static_cast<Eigen::Index>(k) * M_, M_).noalias() =
            D_[k] * u.segment(static_cast<Eigen::Index>(k) * L_, L_);
    return kron_apply_fn_im(z, M_, N_, true);
}

DdCirEstimate estimate_dd_cir(const DDGrid& y_dd, const GammaMatrix& gamma, double rel_tol) {
    if (y_dd.M() != gamma.M || y_dd.N() != gamma.N)
        throw std::invalid_argument("estimate_dd_cir: grid does not match gamma");
    const PinvResult p = pinv(gamma.G, rel_tol);
    const cvec y = y_dd.vec();
    const cvec h = p.pinv * y;
    DdCirEstimate e;
    e.h_dd = Eigen::Map<const cmat>(h.data(), gamma.L, gamma.N);
    e.residual = (y - gamma.G * h).norm();
    e.rank = p.rank;
    e.condition = p.condition();
    e.rank_deficient = p.rank < gamma.N * gamma.L;
    return e;
}

DdCirEstimate estimate_dd_cir(const DDGrid& y_dd, const GammaSolver& solver) {
    if (y_dd.M() != solver.M() || y_dd.N() != solver.N())
        throw std::invalid_argument("estimate_dd_cir: grid does not match solver");
    const cvec y = y_dd.vec();
    DdCirEstimate e;
    e.h_dd = solver.solve(y);
    e.residual = (y - solver.apply(e.h_dd)).norm();
    e.rank = solver.rank();
    e.condition = solver.condition();
    e.rank_deficient = solver.rank() < solver.full_rank();
    return e;
}

cmat dd_to_delay_time(const cmat& h_dd) {
    const int N = static_cast<int>(h_dd.cols());
    return std::sqrt(static_cast<double>(N)) * h_dd * dft_matrix(N).adjoint();
}

cmat delay_time_to_dd(const cmat& H_blocks) {
    const int N = static_cast<int>(H_blocks.cols());
    return H_blocks * dft_matrix(N) / std::sqrt(static_cast<double>(N));
}

void CirStack::append(const cmat& cirs, const std::vector<double>& times) {
    if (cirs.cols() != static_cast<Eigen::Index>(times.size()))
        throw std::invalid_argument("CirStack::append: one time index per column");
    if (!empty() && cirs.rows() != H_dt.rows())
        throw std::invalid_argument("CirStack::append: tap count mismatch");
    if (cirs.cols() == 0) return;
    const Eigen::Index L = cirs.rows();
    const size_t n_old = time_indices.size();
    std::vector<double> t = time_indices;
    t.insert(t.end(), times.begin(), times.end());
    std::vector<size_t> order(t.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return t[a] < t[b]; });
    cmat merged(L, static_cast<Eigen::Index>(t.size()));
    std::vector<double> mt(t.size());
    for (size_t j = 0; j < order.size(); ++j) {
        const size_t i = order[j];
        if (i < n_old)
            merged.col(static_cast<Eigen::Index>(j)) = H_dt.col(static_cast<Eigen::Index>(i));
        else
            merged.col(static_cast<Eigen::Index>(j)) = cirs.col(static_cast<Eigen::Index>(i - n_old));
        mt[j] = t[i];
    }
    H_dt = std::move(merged);
    time_indices = std::move(mt);
}

long symbol_start(int n_o, const SimConfig& cfg) {
    return static_cast<long>(n_o) * cfg.M_T() + cfg.M_CP;
}

double block_time(int n_o, int n, const SimConfig& cfg) {
    return static_cast<double>(symbol_start(n_o, cfg)) + static_cast<double>(n) * cfg.M +
           (cfg.M - 1) / 2.0;
}

std::vector<double> block_times(int n_o, const SimConfig& cfg) {
    std::vector<double> t;
    for (int n = 0; n < cfg.N; ++n) t.push_back(block_time(n_o, n, cfg));
    return t;
}

double symbol_centre_time(int n_o, const SimConfig& cfg) {
    return static_cast<double>(symbol_start(n_o, cfg)) + (cfg.M_o - 1) / 2.0;
}

cmat interpolate_cirs(const CirStack& stack, const std::vector<double>& targets) {
    if (stack.empty()) throw std::logic_error("interpolate_cirs: empty stack");
    const auto& t = stack.time_indices;
    const Eigen::Index L = stack.H_dt.rows();
    cmat out(L, static_cast<Eigen::Index>(targets.size()));
    for (size_t j = 0; j < targets.size(); ++j) {
        const double x = targets[j];
        const auto col = static_cast<Eigen::Index>(j);
        if (x <= t.front()) {
            out.col(col) = stack.H_dt.col(0);
        } else if (x >= t.back()) {
            out.col(col) = stack.H_dt.col(stack.H_dt.cols() - 1);
        } else {
            const auto hi = static_cast<Eigen::Index>(std::upper_bound(t.begin(), t.end(), x) - t.begin());
            const Eigen::Index lo = hi - 1;
            const double w = (x - t[lo]) / (t[hi] - t[lo]);
            out.col(col) = (1.0 - w) * stack.H_dt.col(lo) + w * stack.H_dt.col(hi);
        }
    }
    return out;
}

DelayTimeResponse interpolate_cirs(const CirStack& stack, long start, long count) {
    std::vector<double> targets(static_cast<size_t>(count));
    for (long k = 0; k < count; ++k) targets[k] = static_cast<double>(start + k);
    DelayTimeResponse r;
    r.H = interpolate_cirs(stack, targets);
    r.offset = start;
    return r;
}

CirStack fd_baseline_estimate(const std::vector<cvec>& y_freq, const std::vector<int>& symbols,
                              const cvec& pilot_freq, const SimConfig& cfg) {
    if (y_freq.size() != symbols.size())
        throw std::invalid_argument("fd_baseline_estimate: one symbol index per received symbol");
    if (pilot_freq.size() != cfg.M_o) throw std::invalid_argument("fd_baseline_estimate: pilot length");
    const int P = cfg.M_o / cfg.K_TC;
    cvec xp(P);
    for (int i = 0; i < P; ++i) {
        xp(i) = pilot_freq(static_cast<Eigen::Index>(i) * cfg.K_TC + cfg.comb_offset);
        if (std::abs(xp(i)) == 0.0) throw std::invalid_argument("fd_baseline_estimate: zero pilot value");
    }
    CirStack stack;
    cmat cirs(cfg.L, static_cast<Eigen::Index>(symbols.size()));
    std::vector<double> times;
    cvec ls(P);
    for (size_t s = 0; s < symbols.size(); ++s) {
        if (y_freq[s].size() != cfg.M_o) throw std::invalid_argument("fd_baseline_estimate: symbol length");
        for (int i = 0; i < P; ++i) ls(i) = y_freq[s](static_cast<Eigen::Index>(i) * cfg.K_TC + cfg.comb_offset) / xp(i);
        // plain 1/P inverse transform: the comb samples the unnormalized frequency response
        const cvec h = idft(ls, P) / std::sqrt(static_cast<double>(P));
        for (int l = 0; l < cfg.L; ++l)
            cirs(l, static_cast<Eigen::Index>(s)) =
                h(l) * std::polar(1.0, 2.0 * kPi * l * cfg.comb_offset / cfg.M_o);
        times.push_back(symbol_centre_time(symbols[s], cfg));
    }
    stack.append(cirs, times);
    return stack;
}

SymbolCirs estimate_symbol_cirs(const cvec& r_no_cp, int n_o, const GammaSolver& solver,
                                const SimConfig& cfg) {
    SymbolCirs out;
    const DDGrid y = tf_to_dd_otfs(r_no_cp, cfg);
    out.detail = estimate_dd_cir(y, solver);
    out.cirs = dd_to_delay_time(out.detail.h_dd);
    out.times = block_times(n_o, cfg);
    return out;
}

} // namespace ddce
