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
#include "ddce/numerics.hpp"
#include "oracle.hpp"

using namespace ddce;

TEST_CASE("dft of an impulse is flat") {
    cvec x = cvec::Zero(4);
    x(0) = 1.0;
    const cvec y = dft(x, 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(y(i) - cd(0.5, 0.0)) < 1e-15);
}

TEST_CASE("dft matches the dense matrix and is unitary") {
    oracle::Gen g(11);
    for (int n : {1, 2, 7, 8, 64, 100}) {
        const cvec x = g.vec(n);
        CHECK(oracle::max_abs(dft(x, n) - oracle::dft_matrix(n) * x) < 1e-12);
        CHECK(oracle::max_abs(idft(x, n) - oracle::dft_matrix(n).adjoint() * x) < 1e-12);
        CHECK(std::abs(dft(x).norm() - x.norm()) < 1e-12);
        CHECK(oracle::max_abs(idft(dft(x, n), n) - x) < 1e-12);
    }
    CHECK(oracle::max_abs(dft_matrix(8) - oracle::dft_matrix(8)) < 1e-14);
}

TEST_CASE("dft size mismatch") {
    CHECK_THROWS_AS(dft(cvec::Zero(4), 8), std::invalid_argument);
    CHECK_THROWS_AS(idft(cvec::Zero(3), 4), std::invalid_argument);
}

TEST_CASE("kron transform examples") {
    oracle::Gen g(12);
    const cvec x = g.vec(6);
    CHECK(oracle::max_abs(kron_apply_fn_im(x, 6, 1) - x) < 1e-15);

    cvec e = cvec::Zero(4);
    e(0) = 1.0;
    const cvec y = kron_apply_fn_im(e, 2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(y(0) - r) < 1e-15);
    CHECK(std::abs(y(1)) < 1e-15);
    CHECK(std::abs(y(2) - r) < 1e-15);
    CHECK(std::abs(y(3)) < 1e-15);
}

TEST_CASE("kron transform matches the dense Kronecker product") {
    oracle::Gen g(13);
    const int M = 4, N = 6;
    const cvec x = g.vec(M * N);
    const oracle::cmat K = oracle::kron(oracle::dft_matrix(N), oracle::eye(M));
    CHECK(oracle::max_abs(kron_apply_fn_im(x, M, N) - K * x) < 1e-12);
    CHECK(oracle::max_abs(kron_apply_fn_im(x, M, N, true) - K.adjoint() * x) < 1e-12);
    CHECK(oracle::max_abs(kron_apply_fn_im(kron_apply_fn_im(x, M, N), M, N, true) - x) < 1e-12);
    CHECK_THROWS_AS(kron_apply_fn_im(x, 5, 4), std::invalid_argument);
}

TEST_CASE("pinv small cases") {
    const PinvResult I = pinv(cmat::Identity(4, 4));
    CHECK(oracle::max_abs(I.pinv - cmat::Identity(4, 4)) < 1e-15);
    CHECK(I.rank == 4);

    cmat D = cmat::Zero(3, 3);
    D(0, 0) = 2.0;
    D(1, 1) = 1.0;
    const PinvResult p = pinv(D, 1e-10);
    cmat want = cmat::Zero(3, 3);
    want(0, 0) = 0.5;
    want(1, 1) = 1.0;
    CHECK(oracle::max_abs(p.pinv - want) < 1e-15);
    CHECK(p.rank == 2);
    CHECK(std::isinf(p.condition()));
}

TEST_CASE("pinv left inverse of a tall full-rank matrix") {
    oracle::Gen g(14);
    const cmat A = g.mat(64, 12);
    const PinvResult p = pinv(A);
    CHECK(p.rank == 12);
    CHECK(oracle::max_abs(p.pinv * A - cmat::Identity(12, 12)) < 1e-9);
}

TEST_CASE("pinv satisfies the Moore-Penrose conditions") {
    oracle::Gen g(15);
    struct Shape {
        int r, c, rank;
    };
    for (const Shape s : {Shape{5, 3, 3}, Shape{3, 5, 3}, Shape{40, 40, 25}, Shape{256, 256, 256}, Shape{100, 30, 10}}) {
        const cmat A = g.mat(s.r, s.rank) * g.mat(s.rank, s.c);
        const cmat P = pinv(A).pinv;
        CHECK(oracle::max_abs(A * P * A - A) < 1e-8);
        CHECK(oracle::max_abs(P * A * P - P) < 1e-8);
        CHECK(oracle::max_abs((A * P).adjoint() - A * P) < 1e-8);
        CHECK(oracle::max_abs((P * A).adjoint() - P * A) < 1e-8);
        CHECK(oracle::max_abs(P - oracle::jacobi_pinv(A, 1e-10)) < 1e-6 * (1.0 + oracle::max_abs(P)));
    }
}
