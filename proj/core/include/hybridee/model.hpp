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

#include "hybridee/types.hpp"

namespace hybridee {

/// Noise power over the system bandwidth, N0 * W.
double noise_power(const SystemConfig& cfg);

/// Received power required to hold the average rate target when
/// transmitting for t seconds of the slot:
///   (2^(r * T / (t * W)) - 1) * noise_power.
/// Strictly decreasing and convex in t. Throws std::domain_error when the
/// exponent exceeds `exponent_cap_bits` (the duration is far below any
/// feasible minimum and the value would overflow).
double required_received_power(double t_s, const SystemConfig& cfg,
                               double exponent_cap_bits = 1024.0);

/// Power consumed by a subarray PA to emit p watts, sqrt(p * p_max)/eta_max.
/// Monotone increasing and concave on [0, full_drive_input_w]; exactly
/// p_max_subarray_w at full drive. Throws std::domain_error beyond the cap.
double pa_consumed_power(double p_w, const PaModel& pa);

/// Average instantaneous rate while transmitting, and the slot average it
/// yields, for a given received power.
double instantaneous_rate_bps(double received_power_w, const SystemConfig& cfg);
double achieved_average_rate_bps(double t_s, double received_power_w,
                                 const SystemConfig& cfg);

/// Slot energy account. Subarrays with positive power are active: they pay
/// PA energy plus static and rate-dependent circuit power for t seconds and
/// idle power for the rest of the slot. Inactive subarrays idle all slot.
EnergyBreakdown total_energy(double t_s, std::span<const double> powers_w,
                             const CircuitModel& circuit, const PaModel& pa,
                             const SystemConfig& cfg);

/// Variant with an explicit active-subarray count, for schemes that keep
/// subarray circuitry powered regardless of allocated transmit power.
/// `active_subarrays` must cover every positive entry of powers_w.
EnergyBreakdown total_energy(double t_s, std::span<const double> powers_w,
                             int active_subarrays, const CircuitModel& circuit,
                             const PaModel& pa, const SystemConfig& cfg);

/// Delivered bits per Joule, r * T / E_total.
double energy_efficiency(const EnergyBreakdown& energy, const SystemConfig& cfg);

}  // namespace hybridee
