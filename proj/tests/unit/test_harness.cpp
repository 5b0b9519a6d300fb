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
#include <sstream>

#include "doctest.h"
#include "ddce/dd_estimator.hpp"
#include "ddce/harness.hpp"
#include "ddce/metrics.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace ddce;

TEST_CASE("NMSE examples") {
    oracle::Gen g(80);
    const cmat H = g.mat(4, 10);
    CHECK(nmse(H, H) == 0.0);
    CHECK(to_db(nmse(H, H)) == kDbFloor);
    CHECK(nmse(cmat::Zero(4, 10), H) == doctest::Approx(1.0));
    CHECK(to_db(1.0) == 0.0);
    cmat E = g.mat(4, 10);
    E *= std::sqrt(0.01) * H.norm() / E.norm();
    CHECK(to_db(nmse(H + E, H)) == doctest::Approx(-20.0));
    CHECK_THROWS_AS(nmse(H, cmat::Zero(4, 10)), std::invalid_argument);
    CHECK_THROWS_AS(nmse(H, g.mat(4, 9)), std::invalid_argument);
}

TEST_CASE("per-sample MSE and bit errors") {
    cmat a = cmat::Zero(2, 4), b = cmat::Zero(2, 4);
    b(0, 0) = 2.0;
    b(1, 3) = 1.0;
    CHECK(mse_per_sample(a, b) == doctest::Approx(5.0 / 4.0));
    CHECK(bit_errors({0, 1, 1, 0}, {1, 1, 0, 0}) == 2);
    CHECK_THROWS(bit_errors({0, 1}, {0}));
}

TEST_CASE("sample summaries") {
    const SampleSummary s = summarize({1.0, 2.0, 3.0, std::nan("")});
    CHECK(s.n == 3);
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.ci_halfwidth == doctest::Approx(1.96 * 1.0 / std::sqrt(3.0)));
    const SampleSummary d = summarize_db({0.01, 0.01});
    CHECK(d.mean == doctest::Approx(-20.0));
    CHECK(d.ci_halfwidth == doctest::Approx(0.0));
}

TEST_CASE("CSV round trip and schema") {
    std::vector<ExperimentRow> rows = {
        {"nmse_vs_snr", "fd", "snr_db", 30.0, "nmse_db", -23.123456789123, 0.5, 200, 1},
        {"ber_per_slot", "dd_data_driven", "snr_db", 0.1, "ber_slot_4", 1.0 / 3.0, 1e-5, 125, 18446744073709551615ULL},
    };
    const std::string text = to_csv(rows);
    CHECK(text.rfind("experiment,method,axis_name,axis_value,metric_name,metric_value,ci_halfwidth,trials,seed\n", 0) == 0);
    CHECK(text.find("-23.1234568") != std::string::npos); // 9 significant digits
    const auto back = parse_csv(text);
    REQUIRE(back.size() == 2u);
    CHECK(to_csv(back) == text);
    CHECK(back[1].seed == 18446744073709551615ULL);
    CHECK(back[0].metric_value == doctest::Approx(-23.1234568).epsilon(1e-12));

    CHECK_THROWS(parse_csv(""));
    CHECK_THROWS(parse_csv("a,b\n"));
    CHECK_THROWS(parse_csv(csv_header() + "\nx,y\n"));
    rows[0].method = "a,b";
    CHECK_THROWS(to_csv(rows));

    const auto path = std::filesystem::temp_directory_path() / "ddce_rows.csv";
    write_csv(path, back);
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == text);
    std::filesystem::remove(path);
}

TEST_CASE("per-trial seeds") {
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 5) == trial_seed(1, 5));
    CHECK(trial_seed(2, 0) != trial_seed(1, 0));
    CHECK(one_based_symbol(14) == 15);
}

TEST_CASE("parallel trials cover every index and propagate errors") {
    std::vector<int> hit(37, 0);
    parallel_trials(37, 4, [&](int i) { hit[static_cast<size_t>(i)] += 1; });
    for (int h : hit) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_trials(10, 3, [](int i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("NMSE experiment output is independent of thread count") {
    SimConfig c = fixtures::small_config();
    c.speed_kmh = 300.0;
    const auto a = run_nmse_vs_snr(c, {0.0, 20.0}, 6, 1);
    const auto b = run_nmse_vs_snr(c, {0.0, 20.0}, 6, 3);
    CHECK(to_csv(a.rows) == to_csv(b.rows));
    CHECK(a.rows.size() == 4u);
    CHECK(a.find("dd", "nmse_db", 20.0).trials == 6);
    CHECK_THROWS_AS(a.find("dd", "nmse_db", 10.0), std::out_of_range);
}

TEST_CASE("static channel: both estimators are accurate") {
    SimConfig c = fixtures::small_config();
    c.upsilon_override = 0.0;
    const auto r = run_nmse_vs_snr(c, {30.0}, 10, 1);
    CHECK(r.find("fd", "nmse_db", 30.0).metric_value < -30.0);
    CHECK(r.find("dd", "nmse_db", 30.0).metric_value < -30.0);
}

TEST_CASE("speed sweep and crossover") {
    SimConfig c = fixtures::small_config();
    c.upsilon_override = 1.0; // the sweep must ignore this
    const auto r = run_nmse_vs_speed(c, {10.0, 1000.0}, 4, 1);
    CHECK(r.rows.size() == 4u);
    CHECK(r.rows[0].axis_name == "speed_kmh");

    ExperimentResult fake{"nmse_vs_speed", {}, c};
    auto add = [&](const char* m, double v, double db) { fake.rows.push_back({"x", m, "speed_kmh", v, "nmse_db", db, 0, 1, 1}); };
    add("fd", 100.0, -30.0);
    add("dd", 100.0, -28.0);
    add("fd", 300.0, -20.0);
    add("dd", 300.0, -24.0);
    CHECK(nmse_crossover_speed(fake) == doctest::Approx(100.0 + 200.0 * 2.0 / 6.0));
    fake.rows.pop_back();
    add("dd", 300.0, -19.0);
    CHECK(std::isnan(nmse_crossover_speed(fake)));
}

TEST_CASE("update steps") {
    const SimConfig c;
    const auto steps = update_steps(c);
    CHECK(steps.size() == 44u);
    // the four symbols next to an SRS block have no data neighbour to hand over from
    for (const auto& s : steps) {
        CHECK_FALSE(c.is_srs_symbol(s.from));
        CHECK(std::abs(s.from - s.to) == 1);
    }
    CHECK(steps[0].from == 14);
    CHECK(steps[0].to == 15);
    CHECK(steps[0].from_tail);
    CHECK(steps[1].from == 28);
    CHECK(steps[1].to == 29);
    CHECK(steps[2].from == 9);
    CHECK(steps[2].to == 8);
    CHECK_FALSE(steps[2].from_tail);
}

TEST_CASE("static channel campaign is error free") {
    SimConfig c = fixtures::static_small_config();
    c.equalizer = EqualizerKind::banded;
    c.snr_db = HUGE_VAL;
    const CampaignStats st = run_campaign(c, 2, 1, CampaignOptions{default_ber_targets(c), false});
    for (int s = 0; s < c.n_slots; ++s)
        for (double b : st.slot_ber_samples(s)) CHECK(b == 0.0);
    const auto rows = ber_per_symbol_rows(st, default_ber_targets(c));
    CHECK(rows.size() == 9u);
    CHECK(rows[0].metric_name == "ber_symbol_15");
    for (const auto& r : rows) CHECK(r.metric_value == 0.0);
    for (const auto& r : mse_vs_symbol_rows(st))
        if (r.metric_name == "mse") CHECK(r.metric_value < 1e-18);
}

TEST_CASE("static channel at 30 dB stays near the perfect-CSI error floor") {
    // deep spectral nulls of a fading draw leave a few errors even with a genie channel
    SimConfig c = fixtures::static_small_config();
    c.equalizer = EqualizerKind::banded;
    const CampaignStats st = run_campaign(c, 2, 1, CampaignOptions{default_ber_targets(c), false});
    for (int s = 0; s < c.n_slots; ++s) CHECK(summarize(st.slot_ber_samples(s)).mean < 5e-3);
    for (const auto& r : mse_vs_symbol_rows(st))
        if (r.metric_name == "mse") CHECK(r.metric_value < 1e-4);
}

TEST_CASE("campaign rows and determinism across threads") {
    SimConfig c = fixtures::small_config();
    c.speed_kmh = 360.0;
    c.equalizer = EqualizerKind::banded;
    const auto a = run_ber_per_slot(c, {30.0}, 3, 1);
    const auto b = run_ber_per_slot(c, {30.0}, 3, 2);
    CHECK(to_csv(a.rows) == to_csv(b.rows));
    CHECK(a.rows.size() == 4u);
    const auto m = run_mse_vs_symbol(c, 2, 2);
    // three per-symbol metrics for 48 data symbols plus two per update step
    CHECK(m.rows.size() == 48u * 3u + 2u * update_steps(c).size());
    const auto p = run_ber_per_symbol(c, {20.0, 30.0}, 2, 1);
    CHECK(p.rows.size() == 18u);
}

TEST_CASE("perfect CSI noiseless link") {
    SimConfig c = fixtures::small_config();
    c.speed_kmh = 360.0;
    c.snr_db = HUGE_VAL;
    c.equalizer = EqualizerKind::banded;
    CHECK(perfect_csi_bit_errors(c, 3, 2) == 0);
}
