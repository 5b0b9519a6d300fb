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

#include "doctest.h"
#include "ddce/channel.hpp"
#include "ddce/rng.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace ddce;

TEST_CASE("TDL-C tap profile") {
    const auto taps = tdlc_tap_powers(40);
    double total = 0.0;
    int last = -1;
    for (const auto& [tap, p] : taps) {
        CHECK(tap > last);
        CHECK(tap >= 0);
        CHECK(tap <= 39);
        CHECK(p > 0.0);
        total += p;
        last = tap;
    }
    CHECK(taps.front().first == 0);
    CHECK(taps.back().first == 39);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tdlc_profile().size() == 24u);
}

TEST_CASE("channel draws are deterministic and bounded") {
    SimConfig c;
    Rng a(5), b(5);
    const auto x = sample_tdlc(c, a);
    const auto y = sample_tdlc(c, b);
    REQUIRE(x.paths.size() == y.paths.size());
    for (size_t i = 0; i < x.paths.size(); ++i) {
        CHECK(x.paths[i].gain == y.paths[i].gain);
        CHECK(x.paths[i].doppler == y.paths[i].doppler);
        CHECK(x.paths[i].delay_tap >= 0);
        CHECK(x.paths[i].delay_tap < 40);
        CHECK(std::abs(x.paths[i].doppler) <= c.upsilon_max() + 1e-9);
    }
}

TEST_CASE("mean channel power is one") {
    SimConfig c;
    Rng rng(6);
    double acc = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i)
        for (const auto& p : sample_tdlc(c, rng).paths) acc += std::norm(p.gain);
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("materialized response examples") {
    ChannelRealization ch;
    ch.L = 4;
    ch.paths.push_back({1.0, 0, 0.0});
    const auto r = materialize_response(ch, 10, 1e-6);
    CHECK(oracle::max_abs(r.H.row(0) - cmat::Ones(1, 10)) == 0.0);
    CHECK(r.H.bottomRows(3).isZero());

    const long K = 64;
    const double Ts = 1e-6;
    ChannelRealization rot;
    rot.L = 1;
    rot.paths.push_back({1.0, 0, 1.0 / (K * Ts)});
    const auto h = materialize_response(rot, K, Ts);
    for (long k = 0; k + 1 < K; ++k) CHECK(std::abs(h.H(0, k + 1) / h.H(0, k) - oracle::expj(2.0 * oracle::pi / K)) < 1e-12);
    CHECK_THROWS_AS(materialize_response(rot, 0, Ts), std::invalid_argument);
}

TEST_CASE("materialized response matches the path sum") {
    SimConfig c;
    c.speed_kmh = 1000.0;
    Rng rng(7);
    const auto ch = sample_tdlc(c, rng);
    const long offset = 12345, K = 5000;
    const auto r = materialize_response(ch, K, c.T_s(), offset);
    double err = 0.0;
    for (long k = 0; k < K; k += 7)
        for (int l = 0; l < ch.L; ++l) {
            cd ref = 0.0;
            for (const auto& p : ch.paths)
                if (p.delay_tap == l) ref += p.gain * oracle::expj(2.0 * oracle::pi * p.doppler * (offset + k) * c.T_s());
            err = std::max(err, std::abs(r.H(l, k) - ref));
        }
    CHECK(err < 1e-12);
}

TEST_CASE("apply_channel examples") {
    oracle::Gen g(8);
    const cvec s = g.vec(50);
    Rng rng(1);
    ChannelRealization id;
    id.L = 3;
    id.paths.push_back({1.0, 0, 0.0});
    CHECK(oracle::max_abs(apply_channel(s, materialize_response(id, 50, 1e-6), 0.0, rng) - s) == 0.0);

    ChannelRealization d2;
    d2.L = 3;
    d2.paths.push_back({1.0, 2, 0.0});
    const cvec r = apply_channel(s, materialize_response(d2, 50, 1e-6), 0.0, rng);
    CHECK(r(0) == cd(0.0));
    CHECK(r(1) == cd(0.0));
    CHECK(oracle::max_abs(r.tail(48) - s.head(48)) == 0.0);

    CHECK_THROWS_AS(apply_channel(s, materialize_response(d2, 40, 1e-6), 0.0, rng), std::invalid_argument);
}

TEST_CASE("apply_channel equals the dense banded matrix") {
    SimConfig c = fixtures::small_config();
    c.speed_kmh = 500.0;
    Rng rng(9);
    const auto ch = sample_tdlc(c, rng);
    oracle::Gen g(9);
    const long K = 512;
    const cvec s = g.vec(K);
    const auto H = materialize_response(ch, K, c.T_s());
    const oracle::cmat D = oracle::frame_channel(H.H);
    CHECK(oracle::max_abs(apply_channel(s, H, 0.0, rng) - D * s) < 1e-10);
    CHECK(oracle::max_abs(build_dense_H(H) - D) == 0.0);

    // band support and the static single-tap case
    for (long k = 0; k < K; k += 13)
        for (long j = 0; j < K; j += 11)
            if (k - j < 0 || k - j >= c.L) CHECK(build_dense_H(H)(k, j) == cd(0.0));
    ChannelRealization g1;
    g1.L = 2;
    g1.paths.push_back({cd(0.5, 0.5), 0, 0.0});
    const cmat Dg = build_dense_H(materialize_response(g1, 6, 1e-6));
    CHECK(oracle::max_abs(Dg - cd(0.5, 0.5) * cmat::Identity(6, 6)) == 0.0);

    // linearity
    const cvec s2 = g.vec(K);
    CHECK(oracle::max_abs(apply_channel(s + 2.0 * s2, H, 0.0, rng) -
                          (apply_channel(s, H, 0.0, rng) + 2.0 * apply_channel(s2, H, 0.0, rng))) < 1e-12);
}

TEST_CASE("per-symbol matrix is quasi-circulant") {
    SimConfig c = fixtures::small_config();
    c.speed_kmh = 500.0;
    c.N_o = 3;
    Rng rng(10);
    const auto ch = sample_tdlc(c, rng);
    const long K = static_cast<long>(c.M_T()) * c.N_o;
    const auto H = materialize_response(ch, K, c.T_s());
    const oracle::cmat full = oracle::frame_channel(H.H);
    for (int n = 0; n < c.N_o; ++n) {
        const oracle::cmat blk = full.block(n * c.M_T(), n * c.M_T(), c.M_T(), c.M_T());
        const oracle::cmat Hs = oracle::cp_remove(c.M_o, c.M_CP) * blk * oracle::cp_add(c.M_o, c.M_CP);
        const oracle::cmat ref = oracle::symbol_channel(H.H.middleCols(n * c.M_T() + c.M_CP, c.M_o));
        CHECK(oracle::max_abs(Hs - ref) < 1e-14);
    }
}

TEST_CASE("noise variance") {
    Rng rng(11);
    const long K = 1000000;
    DelayTimeResponse z;
    z.H = cmat::Zero(1, K);
    const cvec r = apply_channel(cvec::Zero(K), z, 0.25, rng);
    CHECK(r.squaredNorm() / K == doctest::Approx(0.25).epsilon(0.01));
    CHECK(std::abs(r.sum() / double(K)) < 0.005);
}
