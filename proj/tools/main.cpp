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

// ddce: runs one experiment and writes its CSV.
//   ddce nmse-vs-snr --config run.cfg --snr-db 0,10,20,30 --trials 200 --out nmse_snr.csv

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddce/config.hpp"
#include "ddce/harness.hpp"

namespace {

struct Options {
    std::string config_path;
    std::vector<double> snr_db;
    std::vector<double> speed_kmh;
    int trials = 20;
    std::optional<std::uint64_t> seed;
    std::optional<int> q;
    std::optional<std::string> equalizer;
    std::string out;
    int threads = 1;
};

ddce::SimConfig resolve(const Options& o) {
    ddce::SimConfig c = ddce::default_config();
    if (!o.config_path.empty()) c = ddce::load_config_file(o.config_path, c);
    if (o.seed) c.seed = *o.seed;
    if (o.q) c.Q = *o.q;
    if (o.equalizer) c.equalizer = ddce::equalizer_from_string(*o.equalizer);
    c.validate();
    return c;
}

void log_doppler(const ddce::SimConfig& c, const std::string& when) {
    if (c.upsilon_overridden())
        std::fprintf(stderr, "ddce: upsilon_max = %.6g Hz (override)%s\n", c.upsilon_max(), when.c_str());
    else
        std::fprintf(stderr, "ddce: upsilon_max = %.6g Hz (from %.6g km/h)%s\n", c.upsilon_max(), c.speed_kmh,
                     when.c_str());
}

ddce::ExperimentResult run(const std::string& cmd, const Options& o, ddce::SimConfig c) {
    auto snrs = o.snr_db.empty() ? std::vector<double>{c.snr_db} : o.snr_db;
    if (cmd == "nmse-vs-speed") {
        auto speeds = o.speed_kmh.empty() ? std::vector<double>{c.speed_kmh} : o.speed_kmh;
        if (o.snr_db.size() > 1) throw ddce::ConfigError("nmse-vs-speed takes a single --snr-db value");
        c.snr_db = snrs.front();
        std::fprintf(stderr, "ddce: speed sweep; upsilon_max follows each speed%s\n",
                     c.upsilon_overridden() ? " (override set, speeds ignored for Doppler)" : "");
        return ddce::run_nmse_vs_speed(c, speeds, o.trials, o.threads);
    }
    if (!o.speed_kmh.empty()) {
        if (o.speed_kmh.size() > 1) throw ddce::ConfigError(cmd + " takes a single --speed-kmh value");
        c.speed_kmh = o.speed_kmh.front();
    }
    log_doppler(c, "");
    if (cmd == "nmse-vs-snr") return ddce::run_nmse_vs_snr(c, snrs, o.trials, o.threads);
    if (cmd == "ber-per-symbol") return ddce::run_ber_per_symbol(c, snrs, o.trials, o.threads);
    if (cmd == "ber-per-slot") return ddce::run_ber_per_slot(c, snrs, o.trials, o.threads);
    if (o.snr_db.size() > 1) throw ddce::ConfigError("mse-vs-symbol takes a single --snr-db value");
    c.snr_db = snrs.front();
    return ddce::run_mse_vs_symbol(c, o.trials, o.threads);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delay-Doppler channel estimation link simulator"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> names = {"nmse-vs-snr", "nmse-vs-speed", "ber-per-symbol", "ber-per-slot",
                                            "mse-vs-symbol"};
    for (const auto& n : names) {
        auto* sub = app.add_subcommand(n, "run the " + n + " experiment");
        sub->add_option("--config", o.config_path, "key=value config file")->check(CLI::ExistingFile);
        sub->add_option("--snr-db", o.snr_db, "SNR list in dB")->delimiter(',');
        sub->add_option("--speed-kmh", o.speed_kmh, "speed list in km/h")->delimiter(',');
        sub->add_option("--trials", o.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--q", o.q, "BEM order Q (even)");
        sub->add_option("--equalizer", o.equalizer, "dense or banded");
        sub->add_option("--out", o.out, "CSV output path (stdout if omitted)");
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    ddce::SimConfig cfg;
    try {
        cfg = resolve(o);
    } catch (const ddce::ConfigError& e) {
        std::fprintf(stderr, "ddce: invalid config: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ddce: cannot read config: %s\n", e.what());
        return 2;
    }

    try {
        const auto result = run(cmd, o, cfg);
        if (o.out.empty()) std::fputs(ddce::to_csv(result.rows).c_str(), stdout);
        else ddce::write_csv(o.out, result.rows);
        std::fprintf(stderr, "ddce: %s, %zu rows, %d trials, seed %llu\n", cmd.c_str(), result.rows.size(), o.trials,
                     static_cast<unsigned long long>(cfg.seed));
    } catch (const ddce::ConfigError& e) {
        std::fprintf(stderr, "ddce: invalid config: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "ddce: %s failed: %s\n", cmd.c_str(), e.what());
        return 3;
    }
    return 0;
}
