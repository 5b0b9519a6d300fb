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

#include "ddce/equalizer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <Eigen/SparseQR>

#include "ddce/waveform.hpp"

namespace ddce {

namespace {

// Time-varying channels often have one isolated singular value far below the
// rest, so at sigma2 == 0 we solve H x = y by QR instead of squaring the
// condition number in H^H H.

} // namespace

spmat time_domain_matrix(const cmat& slice) {
    const Eigen::Index L = slice.rows();
    const Eigen::Index Mo = slice.cols();
    if (L < 1 || L > Mo) throw std::invalid_argument("time_domain_matrix: slice must be L x M_o with L <= M_o");
    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(static_cast<size_t>(L * Mo));
    for (Eigen::Index k = 0; k < Mo; ++k)
        for (Eigen::Index l = 0; l < L; ++l) trip.emplace_back(k, (k - l + Mo) % Mo, slice(l, k));
    spmat H(Mo, Mo);
    H.setFromTriplets(trip.begin(), trip.end());
    return H;
}

cmat reconstruct_h_ofdm(const cmat& slice) {
    const Eigen::Index L = slice.rows();
    const int Mo = static_cast<int>(slice.cols());
    if (L < 1 || L > Mo) throw std::invalid_argument("reconstruct_h_ofdm: slice must be L x M_o with L <= M_o");
    // G(l, d) = sum_k slice(l, k) exp(-j2pi d k / M_o)
    cmat G(L, Mo);
    const double root = std::sqrt(static_cast<double>(Mo));
    for (Eigen::Index l = 0; l < L; ++l) G.row(l) = (dft(cvec(slice.row(l).transpose()), Mo) * root).transpose();
    // tw(l, b) = exp(-j2pi b l / M_o) / M_o
    cmat tw(L, Mo);
    for (Eigen::Index l = 0; l < L; ++l)
        for (int b = 0; b < Mo; ++b)
            tw(l, b) = std::polar(1.0 / Mo, -2.0 * kPi * static_cast<double>((l * b) % Mo) / Mo);
    cmat H(Mo, Mo);
    for (int b = 0; b < Mo; ++b)
        for (int a = 0; a < Mo; ++a) {
            const int d = ((a - b) % Mo + Mo) % Mo;
            cd acc = 0.0;
            for (Eigen::Index l = 0; l < L; ++l) acc += G(l, d) * tw(l, b);
            H(a, b) = acc;
        }
    return H;
}

EqualizedSymbol mmse_equalize(const cvec& y_freq, const cmat& H_ofdm, double sigma2, int qam_order) {
    const Eigen::Index Mo = y_freq.size();
    if (H_ofdm.rows() != Mo || H_ofdm.cols() != Mo)
        throw std::invalid_argument("mmse_equalize: H must be square and match y");
    if (sigma2 < 0.0) throw std::invalid_argument("mmse_equalize: negative noise variance");
    EqualizedSymbol out;
    if (sigma2 == 0.0) {
        const Eigen::ColPivHouseholderQR<cmat> qr(H_ofdm);
        if (qr.rank() == Mo) out.x_hat = qr.solve(y_freq);
    } else {
        cmat A = H_ofdm.adjoint() * H_ofdm;
        A.diagonal().array() += sigma2;
        const Eigen::LLT<cmat> llt(A);
        if (llt.info() == Eigen::Success) out.x_hat = llt.solve(H_ofdm.adjoint() * y_freq);
    }
    if (out.x_hat.size() != Mo || !out.x_hat.allFinite()) {
        out.x_hat = pinv(H_ofdm, 1e-12).pinv * y_freq;
        out.pinv_fallback = true;
    }
    out.hard_syms = qam_hard_decide(out.x_hat, qam_order);
    return out;
}

EqualizedSymbol mmse_equalize_banded(const cvec& y_freq, const cmat& slice, double sigma2, int qam_order) {
    const Eigen::Index Mo = y_freq.size();
    if (slice.cols() != Mo) throw std::invalid_argument("mmse_equalize_banded: slice must have M_o columns");
    if (sigma2 < 0.0) throw std::invalid_argument("mmse_equalize_banded: negative noise variance");
    const spmat H = time_domain_matrix(slice);
    const cvec r = idft(y_freq, static_cast<int>(Mo));
    EqualizedSymbol out;
    cvec t;
    if (sigma2 == 0.0) {
        // sparse LU with refinement; QR if the backward error stays large
        Eigen::SparseLU<spmat, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(H);
        if (lu.info() == Eigen::Success) {
            t = lu.solve(r);
            for (int it = 0; it < 2 && t.allFinite(); ++it) t += lu.solve(cvec(r - H * t));
        }
        bool well_posed = t.size() == Mo && t.allFinite() && (r - H * t).norm() <= 1e-12 * r.norm();
        if (well_posed) {
            // a generic unit vector has about 1/sqrt(M_o) of its energy on the weakest
            // input direction, so one solve estimates the condition number
            cvec v(Mo);
            for (Eigen::Index k = 0; k < Mo; ++k) v(k) = std::polar(1.0, 0.5 * static_cast<double>(k * k % 4099));
            const double cond_est = lu.solve(cvec(v / v.norm())).norm() * H.norm();
            well_posed = std::isfinite(cond_est) && cond_est < 1e11;
        }
        if (!well_posed) {
            t.resize(0);
            Eigen::SparseQR<spmat, Eigen::COLAMDOrdering<int>> qr;
            qr.compute(H);
            if (qr.info() == Eigen::Success && qr.rank() == Mo) t = qr.solve(r);
        }
    } else {
        const spmat Hh = H.adjoint();
        spmat I(Mo, Mo);
        I.setIdentity();
        const spmat A = Hh * H + sigma2 * I;
        Eigen::SimplicialLLT<spmat> llt(A);
        if (llt.info() == Eigen::Success) t = llt.solve(cvec(Hh * r));
    }
    if (t.size() != Mo || !t.allFinite()) {
        t = pinv(cmat(H), 1e-12).pinv * r;
        out.pinv_fallback = true;
    }
    out.x_hat = dft(t, static_cast<int>(Mo));
    out.hard_syms = qam_hard_decide(out.x_hat, qam_order);
    return out;
}

EqualizedSymbol equalize(const cvec& y_freq, const cmat& slice, double sigma2, int qam_order,
                         EqualizerKind kind) {
    if (kind == EqualizerKind::banded) return mmse_equalize_banded(y_freq, slice, sigma2, qam_order);
    return mmse_equalize(y_freq, reconstruct_h_ofdm(slice), sigma2, qam_order);
}

} // namespace ddce
