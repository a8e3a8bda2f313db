// SPDX-License-Identifier: Apache-2.0
//
// hybridee - energy-efficient transmit planning for hybrid antenna arrays
// Copyright (C) 2026 hybridee contributors
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

#include <span>
#include <vector>

#include "hybridee/duration_opt.hpp"
#include "hybridee/types.hpp"

namespace hybridee {

enum class SchemeId { Proposed, Fixed, UniformDuration, WaterFilling };

const char* to_string(SchemeId scheme);

/// All subarrays transmit the whole slot with equal powers sized to meet
/// the rate target exactly.
AllocationSolution fixed_scheme(const EffectiveChannel& eff, const PaModel& pa,
                                const CircuitModel& circuit, const SystemConfig& cfg);

/// All subarrays with equal powers, transmit duration optimized by a dense
/// grid plus golden-section refinement around the best cell (no convexity
/// is assumed for this scheme's energy curve).
AllocationSolution uniform_optimized_duration(const EffectiveChannel& eff, const PaModel& pa,
                                              const CircuitModel& circuit,
                                              const SystemConfig& cfg);

/// All subarrays transmit over an optimized duration; at each duration the
/// powers take the received-power-maximizing shape for the uniform scheme's
/// total power budget (proportional-to-gain-squared under coherent
/// combining, best-channels-first otherwise), scaled back until the rate
/// constraint holds with equality.
AllocationSolution water_filling_scheme(const EffectiveChannel& eff, const PaModel& pa,
                                        const CircuitModel& circuit, const SystemConfig& cfg);

AllocationSolution run_scheme(SchemeId scheme, const EffectiveChannel& eff, const PaModel& pa,
                              const CircuitModel& circuit, const SystemConfig& cfg);

/// Received-power-maximizing split of a total transmit power across
/// subarrays with per-subarray cap. Exposed for tests.
std::vector<double> allocate_total_power(const EffectiveChannel& eff, double total_power_w,
                                         double cap_w);

}  // namespace hybridee
