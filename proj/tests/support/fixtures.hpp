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

#include "ddce/config.hpp"

namespace fixtures {

// Reduced numerology for fast tests: 64 subcarriers, 4 delay blocks of 16.
inline ddce::SimConfig small_config() {
    ddce::SimConfig c;
    c.M_o = 64;
    c.N = 4;
    c.M = 16;
    c.M_CP = 7;
    c.L = 8;
    c.K_TC = 4;
    c.Q = 8;
    c.speed_kmh = 0.0;
    c.snr_db = 30.0;
    c.validate();
    return c;
}

inline ddce::SimConfig static_small_config() {
    auto c = small_config();
    c.upsilon_override = 0.0;
    return c;
}

} // namespace fixtures
