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

#include "ddce/link.hpp"

#include "ddce/dd_estimator.hpp"
#include "ddce/waveform.hpp"

namespace ddce {

Frame simulate_frame(const SimConfig& cfg, Rng& rng) {
    cfg.validate();
    Frame f;
    f.channel = sample_tdlc(cfg, rng);

    const int bps = bits_per_symbol(cfg.qam_order);
    const cvec pilot = srs_pilot_values(cfg);
    f.X.resize(cfg.M_o, cfg.n_symbols());
    f.bits.assign(static_cast<size_t>(cfg.n_symbols()), {});
    for (int slot = 0; slot < cfg.n_slots; ++slot) {
        const bool has_srs = slot < cfg.n_srs_slots;
        const int n_data = cfg.data_symbols_in_slot(slot);
        cvec data(static_cast<Eigen::Index>(n_data) * cfg.M_o);
        for (int j = 0; j < n_data; ++j) {
            auto& b = f.bits[static_cast<size_t>(slot * cfg.N_o + j)];
            b.resize(static_cast<size_t>(cfg.M_o) * bps);
            for (auto& bit : b) bit = static_cast<std::uint8_t>(rng.bit());
            data.segment(static_cast<Eigen::Index>(j) * cfg.M_o, cfg.M_o) = qam_map(b, cfg.qam_order);
        }
        const ResourceGrid g = build_slot(data, pilot, cfg, has_srs);
        f.X.middleCols(static_cast<Eigen::Index>(slot) * cfg.N_o, cfg.N_o) = g.X;
    }
    f.s = ofdm_modulate(f.X, cfg).serialize();
    f.truth = materialize_response(f.channel, cfg.n_samples(), cfg.T_s());
    f.r = apply_channel(f.s, f.truth, cfg.sigma2(), rng);
    return f;
}

cmat truth_slice(const Frame& f, int n_o, const SimConfig& cfg) {
    return f.truth.H.middleCols(symbol_start(n_o, cfg), cfg.M_o);
}

} // namespace ddce
