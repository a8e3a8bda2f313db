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

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridee {

// All quantities are SI internally (W, Hz, s, bit). dBm/dB enter only at
// config I/O, see config_io.hpp.

enum class BeamformingMode { Coherent, NonCoherent };

const char* to_string(BeamformingMode mode);

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace detail

/// Scenario constants: slot, bandwidth, noise floor, rate target and array
/// geometry. Defaults reproduce the shipped reference scenario.
struct SystemConfig {
    double bandwidth_hz = 10.0e6;                       // W
    double slot_s = 10.0e-3;                            // T
    double noise_psd_w_per_hz = 3.9810717055349695e-21; // N0, -174 dBm/Hz
    double target_rate_bps = 60.0e6;                    // average rate over a slot
    int num_subarrays = 16;                             // M
    int antennas_per_subarray = 16;                     // K
    BeamformingMode mode = BeamformingMode::Coherent;

    void validate() const;
};

/// Square-root power amplifier model: consuming sqrt(p * p_max)/eta_max to
/// emit p. p_max_subarray_w is the subarray-level cap, i.e. K times the
/// per-antenna maximum output power.
struct PaModel {
    double p_max_subarray_w = 39.810717055349734; // 46 dBm
    double eta_max = 0.35;

    /// Largest admissible transmit power; driving at this input consumes
    /// exactly p_max_subarray_w.
    double full_drive_input_w() const {
        return p_max_subarray_w * eta_max * eta_max;
    }

    void validate() const;
};

/// Per-subarray circuit consumption: static power while transmitting, idle
/// power otherwise, plus a rate-dependent dynamic term. The dynamic term is
/// linear (epsilon_j_per_bit) unless dynamic_power_fn overrides it with a
/// convex non-decreasing curve.
struct CircuitModel {
    double p_base_w = 50.0e-3;
    double p_idle_w = 30.0e-3;
    double epsilon_j_per_bit = 5.0e-9; // 5 mW/Mbps
    std::function<double(double)> dynamic_power_fn;

    bool linear_dynamic() const { return !dynamic_power_fn; }
    double dynamic_power_w(double rate_bps) const;

    void validate() const;
};

/// One block-fading draw: complex gain per (subarray, antenna) with path
/// loss already applied, on linear amplitude scale.
struct ChannelRealization {
    int num_subarrays = 0;
    int antennas_per_subarray = 0;
    std::vector<std::complex<double>> coefficients; // row-major [m * K + k]
    double distance_m = 0.0;
    double shadowing_db = 0.0;

    std::complex<double> coeff(int m, int k) const {
        return coefficients[static_cast<std::size_t>(m) * antennas_per_subarray + k];
    }
    void validate() const;
};

/// Subarray-level channel summary for one beamforming mode. `eff_gain`
/// rescales the combined amplitude by the PA constants so that subarrays can
/// be ranked for activation; `order` lists subarray indices by descending
/// eff_gain, ties broken by lower index.
struct EffectiveChannel {
    BeamformingMode mode = BeamformingMode::Coherent;
    std::vector<double> amplitude; // combined subarray amplitude (1/sqrt(K) scale)
    std::vector<double> eff_gain;  // amplitude * eta_max / sqrt(p_max)
    std::vector<int> order;

    int num_subarrays() const { return static_cast<int>(eff_gain.size()); }
};

struct EnergyBreakdown {
    double pa_j = 0.0;
    double static_circuit_j = 0.0;
    double dynamic_circuit_j = 0.0;
    double idle_j = 0.0;
    double total_j = 0.0;
};

/// Solver output: transmit duration, active subarray count, per-subarray
/// transmit powers (original index order) and the resulting energy/EE.
struct AllocationSolution {
    bool feasible = false;
    double t_star_s = 0.0;
    int m_star = 0;
    std::vector<double> powers_w;
    EnergyBreakdown energy;
    double ee_bit_per_j = 0.0;
};

}  // namespace hybridee
