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

#include "ddce/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ddce {

double SimConfig::upsilon_max() const {
    if (upsilon_overridden()) return upsilon_override;
    return doppler_from_speed(speed_kmh, f_c);
}

double SimConfig::sigma2() const { return std::pow(10.0, -snr_db / 10.0); }

bool SimConfig::is_srs_symbol(int n_o) const {
    if (n_o < 0 || n_o >= n_symbols()) return false;
    const int slot = n_o / N_o;
    return slot < n_srs_slots && (n_o % N_o) >= N_o - kSrsSymbolsPerSlot;
}

std::vector<int> SimConfig::srs_symbols() const {
    std::vector<int> out;
    for (int n = 0; n < n_symbols(); ++n)
        if (is_srs_symbol(n)) out.push_back(n);
    return out;
}

std::vector<int> SimConfig::data_symbols() const {
    std::vector<int> out;
    for (int n = 0; n < n_symbols(); ++n)
        if (!is_srs_symbol(n)) out.push_back(n);
    return out;
}

int SimConfig::data_symbols_in_slot(int slot) const {
    return slot < n_srs_slots ? N_o - kSrsSymbolsPerSlot : N_o;
}

void SimConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (M_o <= 0 || N <= 0 || M <= 0) fail("m_o, n and m must be positive");
    if (M * N != M_o) fail("m_o must equal m * n");
    if (N_o <= 0) fail("n_o must be positive");
    if (M_CP < 0) fail("m_cp must be non-negative");
    if (L <= 0) fail("l must be positive");
    if (M_CP < L - 1) fail("m_cp must be at least l - 1");
    if (L > M) fail("l must not exceed the delay-block length m");
    if (K_TC <= 0 || M_o % K_TC != 0) fail("k_tc must be positive and divide m_o");
    if (comb_offset < 0 || comb_offset >= K_TC) fail("comb_offset must lie in [0, k_tc)");
    if (L > M_o / K_TC) fail("l must not exceed the pilot count per srs symbol");
    if (!(delta_f > 0.0) || !(f_c > 0.0)) fail("delta_f and f_c must be positive");
    if (speed_kmh < 0.0 || !std::isfinite(speed_kmh)) fail("speed_kmh must be non-negative");
    if (!std::isfinite(upsilon_override)) fail("upsilon_max must be finite");
    if (Q < 0 || Q % 2 != 0) fail("q must be an even non-negative integer");
    // +inf is accepted and means a noiseless link
    if (std::isnan(snr_db) || snr_db == -HUGE_VAL) fail("snr_db must not be nan or -inf");
    if (n_slots <= 0) fail("n_slots must be positive");
    if (n_srs_slots < 0 || n_srs_slots > n_slots) fail("n_srs_slots must lie in [0, n_slots]");
    if (n_srs_slots > 0 && N_o < kSrsSymbolsPerSlot) fail("n_o too small for the srs layout");
    if (qam_order != 4 && qam_order != 16 && qam_order != 64 && qam_order != 256)
        fail("qam_order must be 4, 16, 64 or 256");
    if (!(bem_rel_tol > 0.0) || !(gamma_rel_tol > 0.0)) fail("tolerances must be positive");
    if (zc_root <= 0) fail("zc_root must be positive");
    if (cir_window < 0) fail("cir_window must be non-negative");
}

SimConfig default_config() { return SimConfig{}; }

double doppler_from_speed(double speed_kmh, double f_c) {
    if (speed_kmh < 0.0) throw std::invalid_argument("doppler_from_speed: negative speed");
    if (!(f_c > 0.0)) throw std::invalid_argument("doppler_from_speed: carrier must be positive");
    return speed_kmh / 3.6 * f_c / kSpeedOfLight;
}

std::string to_string(EqualizerKind kind) { return kind == EqualizerKind::dense ? "dense" : "banded"; }

EqualizerKind equalizer_from_string(const std::string& s) {
    if (s == "dense") return EqualizerKind::dense;
    if (s == "banded") return EqualizerKind::banded;
    throw ConfigError("equalizer must be dense or banded, got '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream is(value);
    T out{};
    is >> out;
    if (is.fail() || !is.eof()) throw ConfigError("bad value for " + key + ": '" + value + "'");
    return out;
}

} // namespace

void set_config_value(SimConfig& c, const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in);
    const std::string v = trim(value_in);
    auto i = [&] { return parse_number<long long>(key, v); };
    auto d = [&] { return parse_number<double>(key, v); };
    auto as_int = [&] {
        const long long x = i();
        if (x < -2147483647LL || x > 2147483647LL) throw ConfigError("value out of range for " + key);
        return static_cast<int>(x);
    };

    if (key == "m_o") c.M_o = as_int();
    else if (key == "n_o") c.N_o = as_int();
    else if (key == "n") c.N = as_int();
    else if (key == "m") c.M = as_int();
    else if (key == "m_cp") c.M_CP = as_int();
    else if (key == "k_tc") c.K_TC = as_int();
    else if (key == "delta_f") c.delta_f = d();
    else if (key == "f_c") c.f_c = d();
    else if (key == "l") c.L = as_int();
    else if (key == "speed_kmh") c.speed_kmh = d();
    else if (key == "upsilon_max") c.upsilon_override = d();
    else if (key == "q") c.Q = as_int();
    else if (key == "snr_db") c.snr_db = d();
    else if (key == "n_slots") c.n_slots = as_int();
    else if (key == "n_srs_slots") c.n_srs_slots = as_int();
    else if (key == "qam_order") c.qam_order = as_int();
    else if (key == "seed") {
        if (!v.empty() && v[0] == '-') throw ConfigError("seed must be non-negative");
        c.seed = parse_number<unsigned long long>(key, v);
    }
    else if (key == "bem_rel_tol") c.bem_rel_tol = d();
    else if (key == "gamma_rel_tol") c.gamma_rel_tol = d();
    else if (key == "comb_offset") c.comb_offset = as_int();
    else if (key == "zc_root") c.zc_root = as_int();
    else if (key == "cir_window") c.cir_window = as_int();
    else if (key == "equalizer") c.equalizer = equalizer_from_string(v);
    else throw ConfigError("unknown config key '" + key + "'");
}

SimConfig parse_config(const std::string& text, SimConfig base) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool m_given = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        set_config_value(base, key, line.substr(eq + 1));
        if (key == "m") m_given = true;
    }
    // m follows m_o / n unless pinned explicitly
    if (!m_given && base.N > 0 && base.M_o % base.N == 0) base.M = base.M_o / base.N;
    return base;
}

SimConfig load_config_file(const std::filesystem::path& path, SimConfig base) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), base);
}

std::string to_config_text(const SimConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << "m_o=" << c.M_o << "\nn_o=" << c.N_o << "\nn=" << c.N << "\nm=" << c.M
       << "\nm_cp=" << c.M_CP << "\nk_tc=" << c.K_TC << "\ndelta_f=" << c.delta_f
       << "\nf_c=" << c.f_c << "\nl=" << c.L << "\nspeed_kmh=" << c.speed_kmh;
    if (c.upsilon_overridden()) os << "\nupsilon_max=" << c.upsilon_override;
    os << "\nq=" << c.Q << "\nsnr_db=" << c.snr_db << "\nn_slots=" << c.n_slots
       << "\nn_srs_slots=" << c.n_srs_slots << "\nqam_order=" << c.qam_order
       << "\nseed=" << c.seed << "\nbem_rel_tol=" << c.bem_rel_tol
       << "\ngamma_rel_tol=" << c.gamma_rel_tol << "\ncomb_offset=" << c.comb_offset
       << "\nzc_root=" << c.zc_root << "\ncir_window=" << c.cir_window
       << "\nequalizer=" << to_string(c.equalizer) << "\n";
    return os.str();
}

} // namespace ddce
