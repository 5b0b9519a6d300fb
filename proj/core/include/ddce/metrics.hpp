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

#include <cstdint>
#include <vector>

#include "ddce/channel.hpp"
#include "ddce/numerics.hpp"

namespace ddce {

inline constexpr double kDbFloor = -120.0;

// ||est - truth||_F^2 / ||truth||_F^2
double nmse(const cmat& estimate, const cmat& truth);
double nmse(const DelayTimeResponse& estimate, const DelayTimeResponse& truth);

// 10 log10(x), clamped below at kDbFloor.
double to_db(double linear);

// Mean over samples of the per-sample error energy summed over taps.
double mse_per_sample(const cmat& estimate, const cmat& truth);

long bit_errors(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

struct SampleSummary {
    double mean = 0.0;
    double ci_halfwidth = 0.0; // 95 % normal approximation
    long n = 0;
};

// NaN samples are skipped.
SampleSummary summarize(const std::vector<double>& samples);

// Mean and half-width mapped to dB by the delta method.
SampleSummary summarize_db(const std::vector<double>& samples);

} // namespace ddce
