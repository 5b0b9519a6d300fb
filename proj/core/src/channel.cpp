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

#include "ddce/channel.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace ddce {

const std::vector<TdlTap>& tdlc_profile() {
    static const std::vector<TdlTap> table = {
        {0.0, -4.4},    {0.2099, -1.2}, {0.2219, -3.5}, {0.2329, -5.2}, {0.2176, -2.5},
        {0.6366, 0.0},  {0.6448, -2.2}, {0.6560, -3.9}, {0.6584, -7.4}, {0.7935, -7.1},
        {0.8213, -10.7}, {0.9336, -11.1}, {1.2285, -5.1}, {1.3083, -6.8}, {2.1704, -8.7},
        {2.7105, -13.2}, {4.2589, -13.9}, {4.6003, -13.9}, {5.4902, -15.8}, {5.6077, -17.1},
        {6.3065, -16.0}, {6.6374, -15.7}, {7.0427, -21.6}, {8.6523, -22.8},
    };
    return table;
}

std::vector<std::pair<int, double>> tdlc_tap_powers(int L) {
    if (L < 1) throw std::invalid_argument("tdlc_tap_powers: L must be positive");
    const auto& tab = tdlc_profile();
    double max_delay = 0.0;
    for (const auto& t : tab) max_delay = std::max(max_delay, t.normalized_delay);
    // delay spread chosen so the last tap lands on sample L-1
    std::map<int, double> merged;
    for (const auto& t : tab) {
        const int tap = static_cast<int>(std::lround(t.normalized_delay * (L - 1) / max_delay));
        merged[tap] += std::pow(10.0, t.power_db / 10.0);
    }
    double total = 0.0;
    for (const auto& [k, p] : merged) total += p;
    std::vector<std::pair<int, double>> out;
    for (const auto& [k, p] : merged) out.emplace_back(k, p / total);
    return out;
}

ChannelRealization sample_tdlc(const SimConfig& cfg, Rng& rng) {
    ChannelRealization ch;
    ch.L = cfg.L;
    const double vmax = cfg.upsilon_max();
    for (const auto& [tap, power] : tdlc_tap_powers(cfg.L)) {
        ChannelPath p;
        p.delay_tap = tap;
        p.gain = rng.cgauss(power);
        p.doppler = vmax * std::cos(2.0 * kPi * rng.uniform());
        ch.paths.push_back(p);
    }
    return ch;
}

DelayTimeResponse materialize_response(const ChannelRealization& ch, long K, double T_s, long offset) {
    if (K < 1) throw std::invalid_argument("materialize_response: K must be positive");
    DelayTimeResponse r;
    r.offset = offset;
    r.H = cmat::Zero(ch.L, K);
    for (const auto& p : ch.paths) {
        if (p.delay_tap < 0 || p.delay_tap >= ch.L)
            throw std::invalid_argument("materialize_response: path delay outside [0, L)");
        const double w = 2.0 * kPi * p.doppler * T_s;
        // phasor recurrence, re-anchored every 256 samples to bound rounding drift
        const cd rot = std::polar(1.0, w);
        cd ph;
        for (long k = 0; k < K; ++k) {
            if ((k & 255) == 0) ph = std::polar(1.0, w * static_cast<double>(offset + k));
            r.H(p.delay_tap, k) += p.gain * ph;
            ph *= rot;
        }
    }
    return r;
}

cvec apply_channel(const cvec& s, const DelayTimeResponse& H, double sigma2, Rng& rng) {
    const long K = static_cast<long>(s.size());
    if (H.offset != 0 || H.K() < K)
        throw std::invalid_argument("apply_channel: response must start at 0 and span the signal");
    if (sigma2 < 0.0) throw std::invalid_argument("apply_channel: negative noise variance");
    cvec r = cvec::Zero(K);
    const int L = H.L();
    for (long k = 0; k < K; ++k) {
        cd acc = 0.0;
        const int lmax = static_cast<int>(std::min<long>(L - 1, k));
        for (int l = 0; l <= lmax; ++l) acc += H.H(l, k) * s(k - l);
        r(k) = acc;
    }
    if (sigma2 > 0.0)
        for (long k = 0; k < K; ++k) r(k) += rng.cgauss(sigma2);
    return r;
}

cmat build_dense_H(const DelayTimeResponse& H) {
    const long K = H.K();
    cmat D = cmat::Zero(K, K);
    for (long k = 0; k < K; ++k)
        for (int l = 0; l < H.L() && l <= k; ++l) D(k, k - l) = H.H(l, k);
    return D;
}

} // namespace ddce
