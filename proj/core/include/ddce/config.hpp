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
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddce {

inline constexpr double kSpeedOfLight = 299792458.0;

// Number of SRS symbols at the tail of an SRS-carrying slot.
inline constexpr int kSrsSymbolsPerSlot = 4;

enum class EqualizerKind { dense, banded };

// Raised for parameter sets that violate a config invariant.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct SimConfig {
    int M_o = 1024;
    int N_o = 14;
    int N = 4;
    int M = 256;
    int M_CP = 39;
    int K_TC = 4;
    double delta_f = 15e3;
    double f_c = 4.9e9;
    int L = 40;
    double speed_kmh = 500.0;
    double upsilon_override = -1.0; // < 0: derive from speed_kmh
    int Q = 16;
    double snr_db = 30.0;
    int n_slots = 4;
    int n_srs_slots = 2;
    int qam_order = 4;
    std::uint64_t seed = 1;

    // Extras not in the base parameter set.
    double bem_rel_tol = 1e-2;   // Doppler-basis pseudoinverse truncation
    double gamma_rel_tol = 1e-10;
    int comb_offset = 0;
    int zc_root = 1;
    int cir_window = 0;          // 0: BEM fit uses every stacked CIR
    EqualizerKind equalizer = EqualizerKind::dense;

    int M_T() const { return M_o + M_CP; }
    double T_s() const { return 1.0 / (static_cast<double>(M_o) * delta_f); }
    double bandwidth() const { return static_cast<double>(M_o) * delta_f; }
    double upsilon_max() const;
    bool upsilon_overridden() const { return upsilon_override >= 0.0; }
    // Per-sample noise variance for unit-power symbols.
    double sigma2() const;

    int n_symbols() const { return n_slots * N_o; }
    long n_samples() const { return static_cast<long>(n_symbols()) * M_T(); }
    bool is_srs_symbol(int n_o) const;
    std::vector<int> srs_symbols() const;
    std::vector<int> data_symbols() const;
    int data_symbols_in_slot(int slot) const;

    // Throws ConfigError on any violated invariant.
    void validate() const;
};

SimConfig default_config();

// (speed_kmh / 3.6) * f_c / c
double doppler_from_speed(double speed_kmh, double f_c);

// key=value handling; keys are the lower-snake-case field names.
void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value);
SimConfig parse_config(const std::string& text, SimConfig base = default_config());
SimConfig load_config_file(const std::filesystem::path& path, SimConfig base = default_config());
std::string to_config_text(const SimConfig& cfg);

std::string to_string(EqualizerKind kind);
EqualizerKind equalizer_from_string(const std::string& s);

} // namespace ddce
