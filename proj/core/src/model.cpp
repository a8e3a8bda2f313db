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

#include "hybridee/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybridee {

namespace {

constexpr double kLn2 = 0.6931471805599453;
// Relative slack on duration/power caps so that values equal to a bound up
// to rounding are not rejected.
constexpr double kEdgeSlack = 1e-9;

}  // namespace

const char* to_string(BeamformingMode mode) {
    return mode == BeamformingMode::Coherent ? "coherent" : "noncoherent";
}

void SystemConfig::validate() const {
    detail::require(bandwidth_hz > 0.0, "SystemConfig.bandwidth_hz must be > 0");
    detail::require(slot_s > 0.0, "SystemConfig.slot_s must be > 0");
    detail::require(noise_psd_w_per_hz > 0.0, "SystemConfig.noise_psd_w_per_hz must be > 0");
    detail::require(target_rate_bps > 0.0, "SystemConfig.target_rate_bps must be > 0");
    detail::require(num_subarrays >= 1, "SystemConfig.num_subarrays must be >= 1");
    detail::require(antennas_per_subarray >= 1, "SystemConfig.antennas_per_subarray must be >= 1");
}

void PaModel::validate() const {
    detail::require(p_max_subarray_w > 0.0, "PaModel.p_max_subarray_w must be > 0");
    detail::require(eta_max > 0.0 && eta_max <= 1.0, "PaModel.eta_max must be in (0, 1]");
}

double CircuitModel::dynamic_power_w(double rate_bps) const {
    if (dynamic_power_fn) return dynamic_power_fn(rate_bps);
    return epsilon_j_per_bit * rate_bps;
}

void CircuitModel::validate() const {
    detail::require(p_base_w >= 0.0, "CircuitModel.p_base_w must be >= 0");
    detail::require(p_idle_w >= 0.0, "CircuitModel.p_idle_w must be >= 0");
    detail::require(epsilon_j_per_bit >= 0.0, "CircuitModel.epsilon_j_per_bit must be >= 0");
    if (dynamic_power_fn) {
        detail::require(std::abs(dynamic_power_fn(0.0)) < 1e-30,
                        "CircuitModel.dynamic_power_fn must vanish at zero rate");
    }
}

void ChannelRealization::validate() const {
    detail::require(num_subarrays >= 1 && antennas_per_subarray >= 1,
                    "ChannelRealization dimensions must be positive");
    detail::require(coefficients.size() == static_cast<std::size_t>(num_subarrays) *
                                               static_cast<std::size_t>(antennas_per_subarray),
                    "ChannelRealization.coefficients size mismatch");
    for (const auto& c : coefficients) {
        detail::require(std::isfinite(c.real()) && std::isfinite(c.imag()),
                        "ChannelRealization.coefficients must be finite");
    }
}

double noise_power(const SystemConfig& cfg) {
    return cfg.noise_psd_w_per_hz * cfg.bandwidth_hz;
}

double required_received_power(double t_s, const SystemConfig& cfg,
                               double exponent_cap_bits) {
    detail::require(t_s > 0.0 && t_s <= cfg.slot_s * (1.0 + kEdgeSlack),
                    "required_received_power: duration outside (0, T]");
    const double exponent = cfg.target_rate_bps * cfg.slot_s / (t_s * cfg.bandwidth_hz);
    if (exponent > exponent_cap_bits) {
        throw std::domain_error(
            "required_received_power: rate exponent above cap; duration is far "
            "below any feasible minimum");
    }
    return std::expm1(exponent * kLn2) * noise_power(cfg);
}

double pa_consumed_power(double p_w, const PaModel& pa) {
    const double full = pa.full_drive_input_w();
    if (p_w < 0.0 || p_w > full * (1.0 + kEdgeSlack)) {
        throw std::domain_error("pa_consumed_power: input power outside [0, p_max * eta_max^2]");
    }
    if (p_w >= full) return pa.p_max_subarray_w;
    return std::sqrt(p_w * pa.p_max_subarray_w) / pa.eta_max;
}

double instantaneous_rate_bps(double received_power_w, const SystemConfig& cfg) {
    return cfg.bandwidth_hz * std::log1p(received_power_w / noise_power(cfg)) / kLn2;
}

double achieved_average_rate_bps(double t_s, double received_power_w,
                                 const SystemConfig& cfg) {
    return t_s / cfg.slot_s * instantaneous_rate_bps(received_power_w, cfg);
}

EnergyBreakdown total_energy(double t_s, std::span<const double> powers_w,
                             int active_subarrays, const CircuitModel& circuit,
                             const PaModel& pa, const SystemConfig& cfg) {
    const int m_total = cfg.num_subarrays;
    detail::require(static_cast<int>(powers_w.size()) == m_total,
                    "total_energy: powers size must equal num_subarrays");
    detail::require(t_s > 0.0 && t_s <= cfg.slot_s * (1.0 + kEdgeSlack),
                    "total_energy: duration outside (0, T]");
    detail::require(active_subarrays >= 0 && active_subarrays <= m_total,
                    "total_energy: active_subarrays outside [0, M]");

    EnergyBreakdown e;
    int positive = 0;
    for (double p : powers_w) {
        if (p > 0.0) {
            e.pa_j += pa_consumed_power(p, pa) * t_s;
            ++positive;
        }
    }
    detail::require(positive <= active_subarrays,
                    "total_energy: active_subarrays smaller than positive power count");

    const double off_time = std::max(0.0, cfg.slot_s - t_s);
    if (active_subarrays > 0) {
        const double inst_rate = cfg.target_rate_bps * cfg.slot_s / t_s;
        e.static_circuit_j = active_subarrays * circuit.p_base_w * t_s;
        e.dynamic_circuit_j = active_subarrays * circuit.dynamic_power_w(inst_rate) * t_s;
    }
    e.idle_j = active_subarrays * circuit.p_idle_w * off_time +
               (m_total - active_subarrays) * circuit.p_idle_w * cfg.slot_s;
    e.total_j = e.pa_j + e.static_circuit_j + e.dynamic_circuit_j + e.idle_j;
    return e;
}

EnergyBreakdown total_energy(double t_s, std::span<const double> powers_w,
                             const CircuitModel& circuit, const PaModel& pa,
                             const SystemConfig& cfg) {
    int active = 0;
    for (double p : powers_w) {
        if (p > 0.0) ++active;
    }
    return total_energy(t_s, powers_w, active, circuit, pa, cfg);
}

double energy_efficiency(const EnergyBreakdown& energy, const SystemConfig& cfg) {
    detail::require(energy.total_j > 0.0, "energy_efficiency: total energy must be > 0");
    return cfg.target_rate_bps * cfg.slot_s / energy.total_j;
}

}  // namespace hybridee
