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

#include "ddce/numerics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace ddce {

namespace {

// fftw planning is not thread-safe; execution with new-array calls is.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto& slot = plans_[{n, sign}];
        if (!slot) {
            fftw_complex* in = fftw_alloc_complex(static_cast<size_t>(n));
            fftw_complex* out = fftw_alloc_complex(static_cast<size_t>(n));
            slot = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
            fftw_free(in);
            fftw_free(out);
        }
        return slot;
    }

    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

  private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

cvec run_fft(const cvec& x, int size, int sign) {
    if (size <= 0 || x.size() != size) throw std::invalid_argument("dft: length does not match size");
    cvec in = x; // fftw may scribble on input for some plans
    cvec out(size);
    fftw_plan p = PlanCache::instance().get(size, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    out /= std::sqrt(static_cast<double>(size));
    return out;
}

} // namespace

cvec dft(const cvec& x, int size) { return run_fft(x, size, FFTW_FORWARD); }
cvec idft(const cvec& x, int size) { return run_fft(x, size, FFTW_BACKWARD); }
cvec dft(const cvec& x) { return dft(x, static_cast<int>(x.size())); }
cvec idft(const cvec& x) { return idft(x, static_cast<int>(x.size())); }

cmat dft_matrix(int size) {
    if (size <= 0) throw std::invalid_argument("dft_matrix: size must be positive");
    cmat F(size, size);
    const double s = 1.0 / std::sqrt(static_cast<double>(size));
    for (int k = 0; k < size; ++k)
        for (int n = 0; n < size; ++n) {
            const long kn = (static_cast<long>(k) * n) % size;
            F(k, n) = std::polar(s, -2.0 * kPi * static_cast<double>(kn) / size);
        }
    return F;
}

cvec kron_apply_fn_im(const cvec& x, int M, int N, bool inverse) {
    if (M <= 0 || N <= 0 || x.size() != static_cast<Eigen::Index>(M) * N)
        throw std::invalid_argument("kron_apply_fn_im: length must be M*N");
    if (N == 1) return x;
    // column n of the M x N view is block n; F_N is symmetric so right-multiply
    Eigen::Map<const cmat> blocks(x.data(), M, N);
    const cmat F = inverse ? cmat(dft_matrix(N).conjugate()) : dft_matrix(N);
    cvec out(x.size());
    Eigen::Map<cmat>(out.data(), M, N).noalias() = blocks * F;
    return out;
}

double PinvResult::condition() const {
    if (singular_values.size() == 0) return 0.0;
    const double smin = singular_values(singular_values.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return singular_values(0) / smin;
}

PinvResult pinv(const cmat& A, double rel_tol) {
    if (A.size() == 0) throw std::invalid_argument("pinv: empty matrix");
    Eigen::BDCSVD<cmat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const rvec& s = svd.singularValues();
    PinvResult r;
    r.singular_values = s;
    const double cut = s.size() ? rel_tol * s(0) : 0.0;
    rvec inv = rvec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut && s(i) > 0.0) {
            inv(i) = 1.0 / s(i);
            ++r.rank;
        }
    r.pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
    return r;
}

} // namespace ddce
