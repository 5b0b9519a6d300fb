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

#include "ddce/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddce {

double nmse(const cmat& estimate, const cmat& truth) {
    if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    const double den = truth.squaredNorm();
    if (den == 0.0) throw std::invalid_argument("nmse: zero-norm truth");
    return (estimate - truth).squaredNorm() / den;
}

double nmse(const DelayTimeResponse& estimate, const DelayTimeResponse& truth) {
    if (estimate.offset != truth.offset) throw std::invalid_argument("nmse: spans differ");
    return nmse(estimate.H, truth.H);
}

double to_db(double linear) {
    if (!(linear > 0.0)) return kDbFloor;
    return std::max(kDbFloor, 10.0 * std::log10(linear));
}

double mse_per_sample(const cmat& estimate, const cmat& truth) {
    if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols() || truth.cols() == 0)
        throw std::invalid_argument("mse_per_sample: shape mismatch");
    return (estimate - truth).squaredNorm() / static_cast<double>(truth.cols());
}

long bit_errors(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("bit_errors: length mismatch");
    long e = 0;
    for (size_t i = 0; i < a.size(); ++i) e += (a[i] & 1) != (b[i] & 1);
    return e;
}

SampleSummary summarize(const std::vector<double>& samples) {
    SampleSummary s;
    double sum = 0.0;
    for (double x : samples)
        if (!std::isnan(x)) {
            sum += x;
            ++s.n;
        }
    if (s.n == 0) {
        s.mean = std::nan("");
        return s;
    }
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double x : samples)
            if (!std::isnan(x)) ss += (x - s.mean) * (x - s.mean);
        const double var = ss / static_cast<double>(s.n - 1);
        s.ci_halfwidth = 1.96 * std::sqrt(var / static_cast<double>(s.n));
    }
    return s;
}

SampleSummary summarize_db(const std::vector<double>& samples) {
    SampleSummary s = summarize(samples);
    const double lin = s.mean;
    s.mean = to_db(lin);
    s.ci_halfwidth = lin > 0.0 ? 10.0 / std::log(10.0) * s.ci_halfwidth / lin : 0.0;
    return s;
}

} // namespace ddce
