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
#include <functional>
#include <string>
#include <vector>

#include "ddce/config.hpp"
#include "ddce/numerics.hpp"

namespace ddce {

class GammaSolver;

struct ExperimentRow {
    std::string experiment;
    std::string method;
    std::string axis_name;
    double axis_value = 0.0;
    std::string metric_name;
    double metric_value = 0.0;
    double ci_halfwidth = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;

    bool operator==(const ExperimentRow&) const = default;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<ExperimentRow> rows;
    SimConfig config;

    // First row matching method/metric/axis value; throws if absent.
    const ExperimentRow& find(const std::string& method, const std::string& metric, double axis_value) const;
};

// Runs fn(trial) for trial in [0, n) on `threads` workers. Callers store
// results by trial index, which keeps output independent of scheduling.
void parallel_trials(int n, int threads, const std::function<void(int)>& fn);

// Per-trial RNG seed; the same trial index sees the same channel at every sweep point.
std::uint64_t trial_seed(std::uint64_t master, int trial);

// Symbol labels in reports and CSV rows count from 1.
inline int one_based_symbol(int internal_index) { return internal_index + 1; }

// ---- NMSE experiments: FD baseline vs DD estimation over the SRS span ----

struct NmseTrial {
    double fd = 0.0;
    double dd = 0.0;
};

// Two methods, interpolated across the SRS symbols of the leading SRS slots.
// srs may carry a cached SRS solver for cfg.
NmseTrial nmse_trial(const SimConfig& cfg, int trial, const GammaSolver* srs = nullptr);

ExperimentResult run_nmse_vs_snr(const SimConfig& cfg, const std::vector<double>& snr_db, int trials,
                                 int threads = 1);
ExperimentResult run_nmse_vs_speed(const SimConfig& cfg, const std::vector<double>& speed_kmh, int trials,
                                   int threads = 1);

// Speed at which the DD-minus-FD NMSE (dB) changes sign, linear in between
// sweep points; NaN if there is no sign change.
double nmse_crossover_speed(const ExperimentResult& speed_sweep);

// ---- data-driven link campaign (BER per symbol / slot, MSE traces) ----

struct CampaignOptions {
    // Symbols also detected with the FD-interpolated and BEM-only channel.
    std::vector<int> baseline_symbols;
    // Use the transmitted symbols as virtual pilots instead of the decisions.
    bool genie_virtual_pilots = false;
};

// One trial's per-symbol outcomes; NaN where a symbol was not evaluated.
struct CampaignTrial {
    std::vector<double> ber_fd, ber_bem, ber_dd;
    std::vector<double> mse, mse_head, mse_tail; // estimate used for data-driven detection
    int rank_warnings = 0;
};

CampaignTrial campaign_trial(const SimConfig& cfg, int trial, const CampaignOptions& opt,
                             const GammaSolver* srs = nullptr);

struct CampaignStats {
    SimConfig config;
    int trials = 0;
    std::vector<CampaignTrial> per_trial;

    std::vector<double> samples(const std::vector<double> CampaignTrial::*field, int symbol) const;
    // Per-trial slot average of the data-driven BER.
    std::vector<double> slot_ber_samples(int slot) const;
};

CampaignStats run_campaign(const SimConfig& cfg, int trials, int threads, const CampaignOptions& opt);

// One sequential update seen from the edge it crosses: data symbol `to` is
// detected after its neighbour `from`, which lies toward the nearest SRS block.
struct UpdateStep {
    int from = 0;
    int to = 0;
    bool from_tail = true; // the shared edge is the tail of `from` (from = to - 1)
};
std::vector<UpdateStep> update_steps(const SimConfig& cfg);

struct StepMse {
    UpdateStep step;
    double before = 0.0; // mean over trials, old estimate on from's shared edge
    double after = 0.0;  // mean over trials, updated estimate on to's shared edge
};
std::vector<StepMse> step_mse(const CampaignStats& stats);

// Default target symbols: the first three data symbols of the second slot.
std::vector<int> default_ber_targets(const SimConfig& cfg);

ExperimentResult run_ber_per_symbol(const SimConfig& cfg, const std::vector<double>& snr_db, int trials,
                                    int threads = 1);
ExperimentResult run_ber_per_slot(const SimConfig& cfg, const std::vector<double>& snr_db, int trials,
                                  int threads = 1);
ExperimentResult run_mse_vs_symbol(const SimConfig& cfg, int trials, int threads = 1);

// Rows from existing campaign statistics (used when several figures share one run).
std::vector<ExperimentRow> ber_per_symbol_rows(const CampaignStats& stats, const std::vector<int>& targets);
std::vector<ExperimentRow> ber_per_slot_rows(const CampaignStats& stats);
std::vector<ExperimentRow> mse_vs_symbol_rows(const CampaignStats& stats);

// Perfect-CSI detection of every data symbol: bit errors summed over trials.
long perfect_csi_bit_errors(const SimConfig& cfg, int trials, int threads = 1);

// ---- CSV ----

std::string csv_header();
std::string to_csv(const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path, const std::vector<ExperimentRow>& rows);

} // namespace ddce
