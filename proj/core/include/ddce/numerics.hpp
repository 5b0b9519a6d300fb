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

#include <complex>

#include <Eigen/Dense>

namespace ddce {

using cd = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Unitary DFT, F[k,n] = exp(-j2pi kn/size)/sqrt(size).
cvec dft(const cvec& x, int size);
cvec idft(const cvec& x, int size);
cvec dft(const cvec& x);
cvec idft(const cvec& x);

// Dense unitary DFT matrix; small sizes only.
cmat dft_matrix(int size);

// Applies (F_N kron I_M), or its adjoint when inverse is set, to a length M*N vector.
cvec kron_apply_fn_im(const cvec& x, int M, int N, bool inverse = false);

struct PinvResult {
    cmat pinv;
    int rank = 0;
    rvec singular_values; // descending
    double condition() const; // sigma_max / sigma_min over all singular values
};

// SVD pseudoinverse; singular values below rel_tol * sigma_max are dropped.
PinvResult pinv(const cmat& A, double rel_tol = 1e-10);

} // namespace ddce
