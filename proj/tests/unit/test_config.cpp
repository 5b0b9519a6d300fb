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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "ddce/config.hpp"

using namespace ddce;

TEST_CASE("default config numerology") {
    const SimConfig c = default_config();
    CHECK(c.M_o == 1024);
    CHECK(c.N == 4);
    CHECK(c.M == 256);
    CHECK(c.N_o == 14);
    CHECK(c.M_CP == 39);
    CHECK(c.L == 40);
    CHECK(c.K_TC == 4);
    CHECK(c.delta_f == 15e3);
    CHECK(c.f_c == 4.9e9);
    CHECK(c.qam_order == 4);
    CHECK(c.n_slots == 4);
    CHECK(c.n_srs_slots == 2);
    CHECK(c.M_T() == 1063);
    CHECK(c.T_s() == doctest::Approx(65.104e-9).epsilon(1e-4));
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("doppler from speed") {
    CHECK(doppler_from_speed(0.0, 4.9e9) == 0.0);
    // v/3.6 * fc / c evaluated by hand
    CHECK(doppler_from_speed(500.0, 4.9e9) == doctest::Approx(500.0 / 3.6 * 4.9e9 / 299792458.0));
    CHECK(doppler_from_speed(500.0, 4.9e9) == doctest::Approx(2269.9).epsilon(1e-3));
    CHECK(doppler_from_speed(360.0, 4.9e9) == doctest::Approx(1634.3).epsilon(1e-3));
    CHECK_THROWS_AS(doppler_from_speed(-1.0, 4.9e9), std::invalid_argument);
}

TEST_CASE("doppler override") {
    SimConfig c;
    c.speed_kmh = 500.0;
    CHECK_FALSE(c.upsilon_overridden());
    c.upsilon_override = 2130.0;
    CHECK(c.upsilon_overridden());
    CHECK(c.upsilon_max() == 2130.0);
}

TEST_CASE("noise variance per sample") {
    SimConfig c;
    c.snr_db = 20.0;
    CHECK(c.sigma2() == doctest::Approx(0.01));
    c.snr_db = HUGE_VAL;
    CHECK(c.sigma2() == 0.0);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("frame layout") {
    const SimConfig c;
    CHECK(c.n_symbols() == 56);
    const std::vector<int> srs = {10, 11, 12, 13, 24, 25, 26, 27};
    CHECK(c.srs_symbols() == srs);
    CHECK(c.data_symbols().size() == 48u);
    CHECK(c.data_symbols_in_slot(0) == 10);
    CHECK(c.data_symbols_in_slot(3) == 14);
    CHECK_FALSE(c.is_srs_symbol(-1));
    CHECK_FALSE(c.is_srs_symbol(56));
}

TEST_CASE("derived fields are pure") {
    const SimConfig c;
    CHECK(c.T_s() == c.T_s());
    CHECK(c.upsilon_max() == c.upsilon_max());
    CHECK(c.n_samples() == 56L * 1063L);
}

TEST_CASE("invariant violations") {
    auto bad = [](auto mutate) {
        SimConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), ConfigError);
    };
    bad([](SimConfig& c) { c.M_o = 1000; });           // not M*N
    bad([](SimConfig& c) { c.N = 3; });                // M_o not divisible
    bad([](SimConfig& c) { c.M_CP = 38; });            // M_CP < L-1
    bad([](SimConfig& c) { c.Q = 15; });               // odd Q
    bad([](SimConfig& c) { c.n_srs_slots = 5; });
    bad([](SimConfig& c) { c.speed_kmh = -3.0; });
    bad([](SimConfig& c) { c.qam_order = 8; });
    bad([](SimConfig& c) { c.snr_db = std::nan(""); });
    bad([](SimConfig& c) { c.comb_offset = 4; });
    bad([](SimConfig& c) { c.L = 0; });
}

TEST_CASE("config text parsing") {
    const SimConfig c = parse_config("# comment\nm_o = 512\nn=4 # trailing\n\nspeed_kmh=360\nseed=77\nequalizer=banded\n");
    CHECK(c.M_o == 512);
    CHECK(c.M == 128); // follows m_o / n
    CHECK(c.speed_kmh == 360.0);
    CHECK(c.seed == 77u);
    CHECK(c.equalizer == EqualizerKind::banded);
    CHECK_NOTHROW(c.validate());

    CHECK_THROWS_AS(parse_config("bogus=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("m_o\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("m_o=abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("seed=-1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("equalizer=fast\n"), ConfigError);
}

TEST_CASE("config text round trip") {
    SimConfig c;
    c.M_o = 256;
    c.M = 64;
    c.upsilon_override = 2130.0;
    c.snr_db = 12.5;
    c.seed = 123456789012345ULL;
    c.equalizer = EqualizerKind::banded;
    const SimConfig back = parse_config(to_config_text(c));
    CHECK(to_config_text(back) == to_config_text(c));
    CHECK(back.upsilon_max() == 2130.0);
}

TEST_CASE("config file") {
    const auto path = std::filesystem::temp_directory_path() / "ddce_test_config.txt";
    {
        std::ofstream f(path);
        f << "snr_db=10\nq=24\n";
    }
    const SimConfig c = load_config_file(path);
    CHECK(c.snr_db == 10.0);
    CHECK(c.Q == 24);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config_file(path), ConfigError);
}
