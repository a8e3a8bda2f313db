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

#include <optional>
#include <span>

#include "hybridee/model.hpp"
#include "hybridee/types.hpp"

namespace hybridee {

// Given a transmit duration, the energy-minimal power allocation has a
// saturation structure: the best-ranked subarrays transmit at full drive,
// one residual subarray closes the rate constraint exactly, the rest stay
// off. The algebra runs in the squared-PA-power variable
//   x_m = Psi(p_m)^2 = (p_max / eta_max^2) * p_m,  0 <= x_m <= p_max^2,
// in which the PA draw is just sqrt(x_m) and the rate constraint is linear
// (non-coherent) or linear in sqrt(x) (coherent).

/// Allocation in both the squared-PA-power and transmit-power variables,
/// original subarray index order.
struct PowerAllocation {
    int m_star = 0;
    std::vector<double> pa_power_sq; // x_m in W^2
    std::vector<double> power_w;     // p_m in W
};

/// Received power produced by an allocation under the channel's mode:
/// sum(x * gain^2) for non-coherent, (sum(sqrt(x) * gain))^2 for coherent.
double received_power(std::span<const double> pa_power_sq, const EffectiveChannel& eff);

/// Number of subarrays the energy-optimal allocation activates at duration
/// t: the smallest count whose full-drive received power reaches the rate
/// requirement. A requirement exactly on a boundary assigns the smaller
/// count. nullopt when even all subarrays at full drive fall short.
std::optional<int> active_count(double t_s, const EffectiveChannel& eff,
                                const PaModel& pa, const SystemConfig& cfg);

/// Energy-optimal powers at duration t: best-ranked subarrays saturated,
/// the residual one sized so the achieved average rate equals the target
/// exactly. nullopt when infeasible at this duration.
std::optional<PowerAllocation> optimal_powers(double t_s, const EffectiveChannel& eff,
                                              const PaModel& pa, const SystemConfig& cfg);

/// Exchange step used as a test oracle: given a rate-feasible allocation
/// that violates the saturation ordering, moves power onto the
/// better-ranked subarray while preserving the received power. Never
/// increases the PA draw sum(sqrt(x)). Ordered inputs are returned
/// unchanged.
PowerAllocation swap_improves(const PowerAllocation& alloc, const EffectiveChannel& eff,
                              const PaModel& pa);

}  // namespace hybridee
