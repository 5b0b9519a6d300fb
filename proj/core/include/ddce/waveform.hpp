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

#include <cstdint>
#include <vector>

#include "ddce/config.hpp"
#include "ddce/numerics.hpp"

namespace ddce {

using bmat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct ResourceGrid {
    cmat X;          // M_o x N_o
    bmat data_mask;
    bmat pilot_mask;
};

struct TimeSlotSignal {
    cmat s;          // M_T x N_o, CP first
    cvec serialize() const;
};

// Zadoff-Chu sequence; root must be coprime with length.
cvec zc_sequence(int length, int root = 1);

// Pilot values on the SRS comb. Amplitude sqrt(K_TC) keeps each SRS symbol at
// unit average sample power, the same as a full data symbol.
cvec srs_pilot_values(const SimConfig& cfg);

// Full-length frequency vector of one SRS symbol (zeros off the comb).
cvec srs_symbol_freq(const SimConfig& cfg);

// Data positions are filled column-major (subcarrier fastest, then symbol).
ResourceGrid build_slot(const cvec& data_syms, const cvec& pilot_seq, const SimConfig& cfg,
                        bool slot_has_srs);

TimeSlotSignal ofdm_modulate(const cmat& X, const SimConfig& cfg);
TimeSlotSignal ofdm_modulate(const ResourceGrid& grid, const SimConfig& cfg);

// Input has M_T samples when cp_present, else M_o.
cvec ofdm_demodulate(const cvec& r_n, const SimConfig& cfg, bool cp_present);

// Square Gray-mapped QAM with unit average power. Per symbol the first half of
// the bits select the in-phase level and the second half the quadrature level;
// bit 0 maps to the positive half-plane (4-QAM: 00 -> (1+j)/sqrt2).
int bits_per_symbol(int qam_order);
cvec qam_map(const std::vector<std::uint8_t>& bits, int qam_order);
std::vector<std::uint8_t> qam_demap_hard(const cvec& syms, int qam_order);
// Nearest constellation point.
cvec qam_hard_decide(const cvec& syms, int qam_order);

} // namespace ddce
