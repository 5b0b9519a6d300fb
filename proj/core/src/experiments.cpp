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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ddce/bem.hpp"
#include "ddce/dd_estimator.hpp"
#include "ddce/equalizer.hpp"
#include "ddce/harness.hpp"
#include "ddce/link.hpp"
#include "ddce/metrics.hpp"
#include "ddce/rng.hpp"
#include "ddce/sequential.hpp"
#include "ddce/waveform.hpp"

namespace ddce {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ExperimentRow make_row(const std::string& exp, const std::string& method, const std::string& axis,
                       double axis_value, const std::string& metric, const SampleSummary& s,
                       std::uint64_t seed) {
    return ExperimentRow{exp, method, axis, axis_value, metric, s.mean, s.ci_halfwidth, s.n, seed};
}

double symbol_ber(const Frame& f, int n, const cvec& x_hat, int qam_order) {
    const auto& tx = f.bits[static_cast<size_t>(n)];
    return static_cast<double>(bit_errors(qam_demap_hard(x_hat, qam_order), tx)) /
           static_cast<double>(tx.size());
}

} // namespace

const ExperimentRow& ExperimentResult::find(const std::string& method, const std::string& metric,
                                            double axis_value) const {
    for (const auto& r : rows)
        if (r.method == method && r.metric_name == metric && r.axis_value == axis_value) return r;
    throw std::out_of_range("ExperimentResult::find: no row for " + method + "/" + metric);
}

void parallel_trials(int n, int threads, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
    return mix_seed(master, static_cast<std::uint64_t>(trial));
}

// ---- NMSE ----

NmseTrial nmse_trial(const SimConfig& cfg_in, int trial, const GammaSolver* srs_solver) {
    if (cfg_in.n_srs_slots < 1) throw std::invalid_argument("nmse_trial: needs at least one SRS slot");
    SimConfig cfg = cfg_in;
    cfg.n_slots = cfg.n_srs_slots;
    Rng rng(trial_seed(cfg.seed, trial));
    const Frame f = simulate_frame(cfg, rng);

    const auto srs = cfg.srs_symbols();
    std::vector<cvec> y;
    for (int n : srs) y.push_back(dft(strip_symbol(f.r, n, cfg), cfg.M_o));
    const CirStack fd = fd_baseline_estimate(y, srs, srs_symbol_freq(cfg), cfg);

    const GammaSolver solver = srs_solver ? *srs_solver : srs_gamma_solver(cfg);
    CirStack dd;
    for (int n : srs) {
        const SymbolCirs c = estimate_symbol_cirs(strip_symbol(f.r, n, cfg), n, solver, cfg);
        dd.append(c.cirs, c.times);
    }

    double e_fd = 0.0, e_dd = 0.0, energy = 0.0;
    for (int n : srs) {
        const long start = static_cast<long>(n) * cfg.M_T();
        const auto truth = f.truth.H.middleCols(start, cfg.M_T());
        e_fd += (interpolate_cirs(fd, start, cfg.M_T()).H - truth).squaredNorm();
        e_dd += (interpolate_cirs(dd, start, cfg.M_T()).H - truth).squaredNorm();
        energy += truth.squaredNorm();
    }
    return {e_fd / energy, e_dd / energy};
}

namespace {

std::vector<ExperimentRow> nmse_sweep(const std::string& exp, const std::string& axis,
                                      const std::vector<SimConfig>& points, const std::vector<double>& axis_values,
                                      int trials, int threads) {
    std::vector<ExperimentRow> rows;
    for (size_t p = 0; p < points.size(); ++p) {
        std::vector<NmseTrial> res(static_cast<size_t>(trials));
        const GammaSolver solver = srs_gamma_solver(points[p]);
        parallel_trials(trials, threads, [&](int t) { res[static_cast<size_t>(t)] = nmse_trial(points[p], t, &solver); });
        std::vector<double> fd, dd;
        for (const auto& r : res) {
            fd.push_back(r.fd);
            dd.push_back(r.dd);
        }
        rows.push_back(make_row(exp, "fd", axis, axis_values[p], "nmse_db", summarize_db(fd), points[p].seed));
        rows.push_back(make_row(exp, "dd", axis, axis_values[p], "nmse_db", summarize_db(dd), points[p].seed));
    }
    return rows;
}

} // namespace

ExperimentResult run_nmse_vs_snr(const SimConfig& cfg, const std::vector<double>& snr_db, int trials, int threads) {
    cfg.validate();
    std::vector<SimConfig> pts;
    for (double s : snr_db) {
        SimConfig c = cfg;
        c.snr_db = s;
        pts.push_back(c);
    }
    return {"nmse_vs_snr", nmse_sweep("nmse_vs_snr", "snr_db", pts, snr_db, trials, threads), cfg};
}

ExperimentResult run_nmse_vs_speed(const SimConfig& cfg, const std::vector<double>& speed_kmh, int trials,
                                   int threads) {
    cfg.validate();
    std::vector<SimConfig> pts;
    for (double v : speed_kmh) {
        SimConfig c = cfg;
        c.speed_kmh = v;
        c.upsilon_override = -1.0; // the sweep varies the physical speed
        c.validate();
        pts.push_back(c);
    }
    return {"nmse_vs_speed", nmse_sweep("nmse_vs_speed", "speed_kmh", pts, speed_kmh, trials, threads), cfg};
}

double nmse_crossover_speed(const ExperimentResult& r) {
    std::vector<double> speeds;
    for (const auto& row : r.rows)
        if (row.method == "fd" && row.metric_name == "nmse_db") speeds.push_back(row.axis_value);
    std::sort(speeds.begin(), speeds.end());
    for (size_t i = 0; i + 1 < speeds.size(); ++i) {
        const double d0 = r.find("dd", "nmse_db", speeds[i]).metric_value - r.find("fd", "nmse_db", speeds[i]).metric_value;
        const double d1 = r.find("dd", "nmse_db", speeds[i + 1]).metric_value -
                          r.find("fd", "nmse_db", speeds[i + 1]).metric_value;
        if (d0 >= 0.0 && d1 < 0.0) return speeds[i] + (speeds[i + 1] - speeds[i]) * d0 / (d0 - d1);
    }
    return kNaN;
}

// ---- campaign ----

CampaignTrial campaign_trial(const SimConfig& cfg, int trial, const CampaignOptions& opt,
                             const GammaSolver* srs_solver) {
    Rng rng(trial_seed(cfg.seed, trial));
    const Frame f = simulate_frame(cfg, rng);
    const size_t nsym = static_cast<size_t>(cfg.n_symbols());
    CampaignTrial out;
    for (auto* v : {&out.ber_fd, &out.ber_bem, &out.ber_dd, &out.mse, &out.mse_head, &out.mse_tail})
        v->assign(nsym, kNaN);

    const double s2 = cfg.sigma2();
    SequentialState st = initial_fit(f.r, cfg, srs_solver ? *srs_solver : srs_gamma_solver(cfg));

    if (!opt.baseline_symbols.empty()) {
        const auto srs = cfg.srs_symbols();
        std::vector<cvec> y;
        for (int n : srs) y.push_back(dft(strip_symbol(f.r, n, cfg), cfg.M_o));
        const CirStack fd = fd_baseline_estimate(y, srs, srs_symbol_freq(cfg), cfg);
        for (int n : opt.baseline_symbols) {
            if (cfg.is_srs_symbol(n)) throw std::invalid_argument("campaign: baseline symbol carries SRS");
            const long start = symbol_start(n, cfg);
            const cvec yn = dft(strip_symbol(f.r, n, cfg), cfg.M_o);
            const auto e_fd = equalize(yn, interpolate_cirs(fd, start, cfg.M_o).H, s2, cfg.qam_order, cfg.equalizer);
            out.ber_fd[static_cast<size_t>(n)] = symbol_ber(f, n, e_fd.x_hat, cfg.qam_order);
            const auto e_bem = equalize(yn, predict(st.model, start, cfg.M_o).H, s2, cfg.qam_order, cfg.equalizer);
            out.ber_bem[static_cast<size_t>(n)] = symbol_ber(f, n, e_bem.x_hat, cfg.qam_order);
        }
    }

    const int M = cfg.M;
    for (int n : detection_order(cfg)) {
        const cvec genie = f.X.col(n);
        const StepOutput so = step(st, f.r, n, cfg, opt.genie_virtual_pilots ? &genie : nullptr);
        const size_t i = static_cast<size_t>(n);
        out.ber_dd[i] = symbol_ber(f, n, so.eq.x_hat, cfg.qam_order);
        const cmat truth = truth_slice(f, n, cfg);
        out.mse[i] = mse_per_sample(so.slice, truth);
        out.mse_head[i] = mse_per_sample(so.slice.leftCols(M), truth.leftCols(M));
        out.mse_tail[i] = mse_per_sample(so.slice.rightCols(M), truth.rightCols(M));
    }
    out.rank_warnings = st.rank_warnings;
    return out;
}

std::vector<double> CampaignStats::samples(const std::vector<double> CampaignTrial::*field, int symbol) const {
    std::vector<double> s;
    for (const auto& t : per_trial) s.push_back((t.*field)[static_cast<size_t>(symbol)]);
    return s;
}

std::vector<double> CampaignStats::slot_ber_samples(int slot) const {
    std::vector<double> s;
    for (const auto& t : per_trial) {
        double sum = 0.0;
        int cnt = 0;
        for (int k = 0; k < config.N_o; ++k) {
            const double b = t.ber_dd[static_cast<size_t>(slot * config.N_o + k)];
            if (!std::isnan(b)) {
                sum += b;
                ++cnt;
            }
        }
        s.push_back(cnt ? sum / cnt : kNaN);
    }
    return s;
}

CampaignStats run_campaign(const SimConfig& cfg, int trials, int threads, const CampaignOptions& opt) {
    cfg.validate();
    if (cfg.srs_symbols().empty()) throw std::invalid_argument("run_campaign: needs SRS symbols");
    CampaignStats st;
    st.config = cfg;
    st.trials = trials;
    st.per_trial.resize(static_cast<size_t>(trials));
    const GammaSolver solver = srs_gamma_solver(cfg);
    parallel_trials(trials, threads,
                    [&](int t) { st.per_trial[static_cast<size_t>(t)] = campaign_trial(cfg, t, opt, &solver); });
    return st;
}

std::vector<UpdateStep> update_steps(const SimConfig& cfg) {
    std::vector<UpdateStep> steps;
    const auto srs = cfg.srs_symbols();
    if (srs.empty()) return steps;
    auto is_srs = [&](int n) { return std::find(srs.begin(), srs.end(), n) != srs.end(); };
    for (int b : detection_order(cfg)) {
        int d = cfg.n_symbols();
        for (int s : srs) d = std::min(d, std::abs(b - s));
        const int a = is_srs(b - d) ? b - 1 : b + 1;
        if (a < 0 || a >= cfg.n_symbols() || is_srs(a)) continue;
        steps.push_back({a, b, a == b - 1});
    }
    return steps;
}

std::vector<StepMse> step_mse(const CampaignStats& stats) {
    std::vector<StepMse> out;
    for (const auto& s : update_steps(stats.config)) {
        const auto before = summarize(stats.samples(s.from_tail ? &CampaignTrial::mse_tail : &CampaignTrial::mse_head, s.from));
        const auto after = summarize(stats.samples(s.from_tail ? &CampaignTrial::mse_head : &CampaignTrial::mse_tail, s.to));
        out.push_back({s, before.mean, after.mean});
    }
    return out;
}

std::vector<int> default_ber_targets(const SimConfig& cfg) {
    std::vector<int> t;
    if (cfg.n_slots < 2) return t;
    for (int k = 0; k < cfg.N_o && t.size() < 3; ++k)
        if (!cfg.is_srs_symbol(cfg.N_o + k)) t.push_back(cfg.N_o + k);
    return t;
}

std::vector<ExperimentRow> ber_per_symbol_rows(const CampaignStats& st, const std::vector<int>& targets) {
    std::vector<ExperimentRow> rows;
    const auto& c = st.config;
    const std::pair<const char*, std::vector<double> CampaignTrial::*> methods[] = {
        {"fd", &CampaignTrial::ber_fd}, {"dd_bem", &CampaignTrial::ber_bem}, {"dd_data_driven", &CampaignTrial::ber_dd}};
    for (const auto& [name, field] : methods)
        for (int n : targets)
            rows.push_back(make_row("ber_per_symbol", name, "snr_db", c.snr_db,
                                    "ber_symbol_" + std::to_string(one_based_symbol(n)), summarize(st.samples(field, n)),
                                    c.seed));
    return rows;
}

std::vector<ExperimentRow> ber_per_slot_rows(const CampaignStats& st) {
    std::vector<ExperimentRow> rows;
    for (int s = 0; s < st.config.n_slots; ++s)
        rows.push_back(make_row("ber_per_slot", "dd_data_driven", "snr_db", st.config.snr_db,
                                "ber_slot_" + std::to_string(s + 1), summarize(st.slot_ber_samples(s)), st.config.seed));
    return rows;
}

std::vector<ExperimentRow> mse_vs_symbol_rows(const CampaignStats& st) {
    std::vector<ExperimentRow> rows;
    const auto& c = st.config;
    for (int n : c.data_symbols()) {
        const double label = one_based_symbol(n);
        rows.push_back(make_row("mse_vs_symbol", "dd_data_driven", "symbol", label, "mse",
                                summarize(st.samples(&CampaignTrial::mse, n)), c.seed));
        rows.push_back(make_row("mse_vs_symbol", "dd_data_driven", "symbol", label, "mse_head",
                                summarize(st.samples(&CampaignTrial::mse_head, n)), c.seed));
        rows.push_back(make_row("mse_vs_symbol", "dd_data_driven", "symbol", label, "mse_tail",
                                summarize(st.samples(&CampaignTrial::mse_tail, n)), c.seed));
    }
    for (const auto& s : step_mse(st)) {
        const double label = one_based_symbol(s.step.to);
        SampleSummary b{s.before, 0.0, st.trials};
        SampleSummary a{s.after, 0.0, st.trials};
        rows.push_back(make_row("mse_vs_symbol", "dd_data_driven", "symbol", label, "mse_step_before", b, c.seed));
        rows.push_back(make_row("mse_vs_symbol", "dd_data_driven", "symbol", label, "mse_step_after", a, c.seed));
    }
    return rows;
}

ExperimentResult run_ber_per_symbol(const SimConfig& cfg, const std::vector<double>& snr_db, int trials, int threads) {
    cfg.validate();
    const auto targets = default_ber_targets(cfg);
    if (targets.empty()) throw std::invalid_argument("ber_per_symbol: needs at least two slots");
    ExperimentResult r{"ber_per_symbol", {}, cfg};
    for (double s : snr_db) {
        SimConfig c = cfg;
        c.snr_db = s;
        const auto st = run_campaign(c, trials, threads, CampaignOptions{targets, false});
        const auto rows = ber_per_symbol_rows(st, targets);
        r.rows.insert(r.rows.end(), rows.begin(), rows.end());
    }
    return r;
}

ExperimentResult run_ber_per_slot(const SimConfig& cfg, const std::vector<double>& snr_db, int trials, int threads) {
    cfg.validate();
    ExperimentResult r{"ber_per_slot", {}, cfg};
    for (double s : snr_db) {
        SimConfig c = cfg;
        c.snr_db = s;
        const auto rows = ber_per_slot_rows(run_campaign(c, trials, threads, {}));
        r.rows.insert(r.rows.end(), rows.begin(), rows.end());
    }
    return r;
}

ExperimentResult run_mse_vs_symbol(const SimConfig& cfg, int trials, int threads) {
    cfg.validate();
    return {"mse_vs_symbol", mse_vs_symbol_rows(run_campaign(cfg, trials, threads, {})), cfg};
}

long perfect_csi_bit_errors(const SimConfig& cfg, int trials, int threads) {
    cfg.validate();
    std::vector<long> errs(static_cast<size_t>(trials), 0);
    parallel_trials(trials, threads, [&](int t) {
        Rng rng(trial_seed(cfg.seed, t));
        const Frame f = simulate_frame(cfg, rng);
        long e = 0;
        for (int n : cfg.data_symbols()) {
            const cvec y = dft(strip_symbol(f.r, n, cfg), cfg.M_o);
            const auto eq = equalize(y, truth_slice(f, n, cfg), cfg.sigma2(), cfg.qam_order, cfg.equalizer);
            e += bit_errors(qam_demap_hard(eq.x_hat, cfg.qam_order), f.bits[static_cast<size_t>(n)]);
        }
        errs[static_cast<size_t>(t)] = e;
    });
    long total = 0;
    for (long e : errs) total += e;
    return total;
}

} // namespace ddce
