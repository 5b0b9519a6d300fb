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

#include "ddce/bem.hpp"
#include "ddce/channel.hpp"
#include "ddce/config.hpp"
#include "ddce/dd_estimator.hpp"
#include "ddce/dd_transform.hpp"
#include "ddce/equalizer.hpp"
#include "ddce/harness.hpp"
#include "ddce/link.hpp"
#include "ddce/metrics.hpp"
#include "ddce/numerics.hpp"
#include "ddce/rng.hpp"
#include "ddce/sequential.hpp"
#include "ddce/waveform.hpp"
