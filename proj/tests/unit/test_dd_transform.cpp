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
#include "ddce/dd_transform.hpp"
#include "ddce/waveform.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace ddce;

TEST_CASE("single block is a plain IDFT") {
    oracle::Gen g(20);
    const cvec y = g.vec(16);
    const DDGrid d = tf_to_dd_sc(y, 16, 1);
    CHECK(oracle::max_abs(cvec(d.y.col(0)) - oracle::dft_matrix(16).adjoint() * y) < 1e-12);
    CHECK(oracle::max_abs(tf_to_dd_otfs(y, 16, 1).vec() - y) < 1e-15);
}

TEST_CASE("all-ones input with M=4, N=2") {
    // Every downsampled branch sees four ones, so both blocks hold the IDFT
    // of a constant: 2 at delay 0. The phase ramp is 1 at m = 0.
    const DDGrid d = tf_to_dd_sc(cvec::Ones(8), 4, 2);
    const cvec want = oracle::sc_dd_operator(4, 2) * cvec::Ones(8);
    CHECK(oracle::max_abs(d.vec() - want) < 1e-14);
    for (int n = 0; n < 2; ++n) {
        CHECK(std::abs(d.y(0, n) - cd(2.0, 0.0)) < 1e-14);
        CHECK(d.y.col(n).tail(3).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("phase-compensated receiver equals the OTFS demodulator") {
    for (auto [M, N] : {std::pair{4, 2}, std::pair{8, 4}, std::pair{16, 4}}) {
        const oracle::cmat lhs = oracle::sc_dd_time_operator(M, N);
        const oracle::cmat rhs = oracle::kron(oracle::dft_matrix(N), oracle::eye(M));
        CHECK(oracle::max_abs(lhs - rhs) < 1e-12);
    }
    oracle::Gen g(21);
    for (auto [M, N] : {std::pair{4, 2}, std::pair{8, 4}, std::pair{64, 4}, std::pair{256, 4}, std::pair{32, 32}, std::pair{128, 8}}) {
        for (int t = 0; t < 5; ++t) {
            const cvec r = g.vec(M * N);
            const DDGrid a = tf_to_dd_otfs(r, M, N);
            const DDGrid b = tf_to_dd_sc(oracle::dft_matrix(M * N) * r, M, N);
            CHECK(oracle::max_abs(a.vec() - b.vec()) < 1e-12);
            CHECK(std::abs(a.vec().norm() - r.norm()) < 1e-12);
            CHECK(std::abs(b.vec().norm() - r.norm()) < 1e-12);
        }
    }
}

TEST_CASE("sc transform matches its dense definition and inverts") {
    oracle::Gen g(22);
    const int M = 8, N = 4;
    const cvec y = g.vec(M * N);
    const DDGrid d = tf_to_dd_sc(y, M, N);
    CHECK(oracle::max_abs(d.vec() - oracle::sc_dd_operator(M, N) * y) < 1e-12);
    CHECK(oracle::max_abs(dd_to_tf_sc(d) - y) < 1e-12);
    CHECK(oracle::max_abs(tf_to_dd_sc(dd_to_tf_sc(d), M, N).vec() - d.vec()) < 1e-12);
    CHECK_THROWS_AS(tf_to_dd_sc(y, 8, 3), std::invalid_argument);
    CHECK_THROWS_AS(tf_to_dd_otfs(y, 5, 4), std::invalid_argument);
}

TEST_CASE("grid vectorization is column-major") {
    cvec v(6);
    v << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
    const DDGrid d = DDGrid::from_vec(v, 3, 2, 7);
    CHECK(d.y(0, 1) == cd(4.0));
    CHECK(d.symbol_index == 7);
    CHECK(d.vec() == v);
}

TEST_CASE("comb pilot in the DD domain") {
    SimConfig c = fixtures::small_config(); // N = K_TC = 4
    CHECK(pilot_to_dd(cvec::Zero(c.M_o), c).y.isZero());

    // constant comb values: one impulse
    cvec x = cvec::Zero(c.M_o);
    for (int m = 0; m < c.M_o; m += c.K_TC) x(m) = 1.0;
    const DDGrid imp = pilot_to_dd(x, c);
    int nonzero = 0;
    for (int n = 0; n < c.N; ++n)
        for (int m = 0; m < c.M; ++m)
            if (std::abs(imp.y(m, n)) > 1e-12) ++nonzero;
    CHECK(nonzero == 1);
    CHECK(std::abs(imp.y(0, 0)) > 1.0);

    // ZC comb: all energy in block 0
    for (const SimConfig& cc : {fixtures::small_config(), SimConfig{}}) {
        const DDGrid z = pilot_to_dd(srs_symbol_freq(cc), cc);
        CHECK(z.y.col(0).norm() > 1.0);
        for (int n = 1; n < cc.N; ++n) CHECK(z.y.col(n).cwiseAbs().maxCoeff() < 1e-12);
    }
}
