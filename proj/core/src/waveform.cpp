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

#include "ddce/waveform.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ddce {

cvec TimeSlotSignal::serialize() const {
    return Eigen::Map<const cvec>(s.data(), s.size());
}

cvec zc_sequence(int length, int root) {
    if (length < 1) throw std::invalid_argument("zc_sequence: length must be positive");
    if (root <= 0 || std::gcd(root, length) != 1)
        throw std::invalid_argument("zc_sequence: root must be positive and coprime with length");
    cvec x(length);
    const bool odd = length % 2 == 1;
    for (int n = 0; n < length; ++n) {
        // reduce the quadratic index modulo 2*length before scaling to keep phases exact
        const long long two_len = 2LL * length;
        const long long q = odd ? (static_cast<long long>(n) * (n + 1)) % two_len
                                : (static_cast<long long>(n) * n) % two_len;
        const long long k = (static_cast<long long>(root) * q) % two_len;
        x(n) = std::polar(1.0, -kPi * static_cast<double>(k) / length);
    }
    return x;
}

cvec srs_pilot_values(const SimConfig& cfg) {
    return std::sqrt(static_cast<double>(cfg.K_TC)) * zc_sequence(cfg.M_o / cfg.K_TC, cfg.zc_root);
}

cvec srs_symbol_freq(const SimConfig& cfg) {
    const cvec p = srs_pilot_values(cfg);
    cvec x = cvec::Zero(cfg.M_o);
    for (int i = 0; i < p.size(); ++i) x(i * cfg.K_TC + cfg.comb_offset) = p(i);
    return x;
}

ResourceGrid build_slot(const cvec& data_syms, const cvec& pilot_seq, const SimConfig& cfg,
                        bool slot_has_srs) {
    const int Mo = cfg.M_o;
    const int No = cfg.N_o;
    ResourceGrid g;
    g.X = cmat::Zero(Mo, No);
    g.data_mask = bmat::Constant(Mo, No, false);
    g.pilot_mask = bmat::Constant(Mo, No, false);

    const int n_data_syms = slot_has_srs ? No - kSrsSymbolsPerSlot : No;
    if (data_syms.size() != static_cast<Eigen::Index>(n_data_syms) * Mo)
        throw std::invalid_argument("build_slot: data length does not match the data positions");
    for (int n = 0; n < n_data_syms; ++n)
        for (int m = 0; m < Mo; ++m) {
            g.X(m, n) = data_syms(static_cast<Eigen::Index>(n) * Mo + m);
            g.data_mask(m, n) = true;
        }
    if (slot_has_srs) {
        const int n_pilots = Mo / cfg.K_TC;
        if (pilot_seq.size() != n_pilots)
            throw std::invalid_argument("build_slot: pilot length must be m_o / k_tc");
        for (int n = n_data_syms; n < No; ++n)
            for (int i = 0; i < n_pilots; ++i) {
                const int m = i * cfg.K_TC + cfg.comb_offset;
                g.X(m, n) = pilot_seq(i);
                g.pilot_mask(m, n) = true;
            }
    }
    return g;
}

TimeSlotSignal ofdm_modulate(const cmat& X, const SimConfig& cfg) {
    if (X.rows() != cfg.M_o) throw std::invalid_argument("ofdm_modulate: grid must have m_o rows");
    TimeSlotSignal out;
    out.s.resize(cfg.M_T(), X.cols());
    for (Eigen::Index n = 0; n < X.cols(); ++n) {
        const cvec t = idft(X.col(n), cfg.M_o);
        out.s.col(n).head(cfg.M_CP) = t.tail(cfg.M_CP);
        out.s.col(n).tail(cfg.M_o) = t;
    }
    return out;
}

TimeSlotSignal ofdm_modulate(const ResourceGrid& grid, const SimConfig& cfg) {
    if (grid.X.cols() != cfg.N_o) throw std::invalid_argument("ofdm_modulate: grid must have n_o columns");
    return ofdm_modulate(grid.X, cfg);
}

cvec ofdm_demodulate(const cvec& r_n, const SimConfig& cfg, bool cp_present) {
    const int want = cp_present ? cfg.M_T() : cfg.M_o;
    if (r_n.size() != want) throw std::invalid_argument("ofdm_demodulate: wrong input length");
    if (cp_present) return dft(cvec(r_n.tail(cfg.M_o)), cfg.M_o);
    return dft(r_n, cfg.M_o);
}

namespace {

int axis_bits(int qam_order) { return bits_per_symbol(qam_order) / 2; }

double qam_scale(int qam_order) { return std::sqrt(2.0 * (qam_order - 1) / 3.0); }

int gray_to_binary(int g) {
    int b = 0;
    for (; g; g >>= 1) b ^= g;
    return b;
}

double level_from_bits(const std::uint8_t* bits, int k) {
    int g = 0;
    for (int i = 0; i < k; ++i) g = (g << 1) | (bits[i] & 1);
    const int idx = gray_to_binary(g);
    return static_cast<double>((1 << k) - 1 - 2 * idx);
}

int index_from_level(double a, int k) {
    const int top = (1 << k) - 1;
    int idx = static_cast<int>(std::lround((top - a) / 2.0));
    if (idx < 0) idx = 0;
    if (idx > top) idx = top;
    return idx;
}

} // namespace

int bits_per_symbol(int qam_order) {
    switch (qam_order) {
    case 4: return 2;
    case 16: return 4;
    case 64: return 6;
    case 256: return 8;
    default: throw std::invalid_argument("qam: unsupported constellation order");
    }
}

cvec qam_map(const std::vector<std::uint8_t>& bits, int qam_order) {
    const int b = bits_per_symbol(qam_order);
    const int k = b / 2;
    if (bits.size() % static_cast<size_t>(b) != 0)
        throw std::invalid_argument("qam_map: bit count not divisible by bits per symbol");
    const double s = qam_scale(qam_order);
    const Eigen::Index n = static_cast<Eigen::Index>(bits.size() / b);
    cvec out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::uint8_t* p = bits.data() + i * b;
        out(i) = cd(level_from_bits(p, k), level_from_bits(p + k, k)) / s;
    }
    return out;
}

std::vector<std::uint8_t> qam_demap_hard(const cvec& syms, int qam_order) {
    const int b = bits_per_symbol(qam_order);
    const int k = b / 2;
    const double s = qam_scale(qam_order);
    std::vector<std::uint8_t> bits(static_cast<size_t>(syms.size()) * b);
    for (Eigen::Index i = 0; i < syms.size(); ++i) {
        const int gi = index_from_level(syms(i).real() * s, k);
        const int gq = index_from_level(syms(i).imag() * s, k);
        const int ci = gi ^ (gi >> 1);
        const int cq = gq ^ (gq >> 1);
        for (int j = 0; j < k; ++j) {
            bits[i * b + j] = static_cast<std::uint8_t>((ci >> (k - 1 - j)) & 1);
            bits[i * b + k + j] = static_cast<std::uint8_t>((cq >> (k - 1 - j)) & 1);
        }
    }
    return bits;
}

cvec qam_hard_decide(const cvec& syms, int qam_order) {
    const int k = axis_bits(qam_order);
    const double s = qam_scale(qam_order);
    const int top = (1 << k) - 1;
    cvec out(syms.size());
    for (Eigen::Index i = 0; i < syms.size(); ++i) {
        const double re = top - 2 * index_from_level(syms(i).real() * s, k);
        const double im = top - 2 * index_from_level(syms(i).imag() * s, k);
        out(i) = cd(re, im) / s;
    }
    return out;
}

} // namespace ddce
