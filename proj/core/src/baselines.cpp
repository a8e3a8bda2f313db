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

#include "hybridee/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hybridee {

namespace {

constexpr int kDurationGridPoints = 1024;
constexpr double kCapRelTol = 1e-12;

// Equal squared-PA-power x that meets the rate target at duration t with
// every subarray transmitting. NaN when the channel cannot carry it at all.
double uniform_pa_power_sq(double t_s, const EffectiveChannel& eff, const PaModel& pa,
                           const SystemConfig& cfg) {
    const double theta = required_received_power(t_s, cfg);
    if (eff.mode == BeamformingMode::NonCoherent) {
        double gain_sq_sum = 0.0;
        for (double g : eff.eff_gain) gain_sq_sum += g * g;
        if (!(gain_sq_sum > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        return theta / gain_sq_sum;
    }
    double gain_sum = 0.0;
    for (double g : eff.eff_gain) gain_sum += g;
    if (!(gain_sum > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double amp = std::sqrt(theta) / gain_sum;
    return amp * amp;
}

// Slot energy with all subarrays' circuitry powered for the transmit
// window, PA energy from the given squared powers.
double all_active_energy(double t_s, std::span<const double> pa_power_sq,
                         const CircuitModel& circuit, const SystemConfig& cfg) {
    const int m_total = cfg.num_subarrays;
    double pa_draw = 0.0;
    for (double x : pa_power_sq) pa_draw += std::sqrt(x);
    const double inst_rate = cfg.target_rate_bps * cfg.slot_s / t_s;
    return pa_draw * t_s +
           m_total * (circuit.dynamic_power_w(inst_rate) + circuit.p_base_w - circuit.p_idle_w) * t_s +
           m_total * circuit.p_idle_w * cfg.slot_s;
}

AllocationSolution materialize_all_active(double t_s, std::span<const double> pa_power_sq,
                                          const PaModel& pa, const CircuitModel& circuit,
                                          const SystemConfig& cfg) {
    AllocationSolution out;
    out.feasible = true;
    out.t_star_s = t_s;
    out.m_star = cfg.num_subarrays;
    const double x_to_p = pa.eta_max * pa.eta_max / pa.p_max_subarray_w;
    out.powers_w.resize(pa_power_sq.size());
    for (std::size_t m = 0; m < pa_power_sq.size(); ++m) {
        out.powers_w[m] = pa_power_sq[m] * x_to_p;
    }
    out.energy = total_energy(t_s, out.powers_w, cfg.num_subarrays, circuit, pa, cfg);
    out.ee_bit_per_j = energy_efficiency(out.energy, cfg);
    return out;
}

// Dense grid over [lo, hi] plus golden-section refinement around the best
// cell; returns the best duration found.
ScalarMinimum grid_refine_minimize(const std::function<double(double)>& energy_at,
                                   double lo, double hi, double tol) {
    if (!(hi > lo)) return {lo, energy_at(lo)};
    const int n = kDurationGridPoints;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
    grid.back() = hi;

    int best_i = 0;
    double best_e = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double e = energy_at(grid[i]);
        if (e < best_e) {
            best_e = e;
            best_i = i;
        }
    }
    const double a = grid[std::max(0, best_i - 1)];
    const double b = grid[std::min(n - 1, best_i + 1)];
    auto refined = golden_section_minimize(energy_at, a, b, tol);
    if (refined.value < best_e) return refined;
    return {grid[best_i], best_e};
}

}  // namespace

const char* to_string(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::Proposed: return "proposed";
        case SchemeId::Fixed: return "fixed";
        case SchemeId::UniformDuration: return "uniform-duration";
        case SchemeId::WaterFilling: return "water-filling";
    }
    return "?";
}

AllocationSolution fixed_scheme(const EffectiveChannel& eff, const PaModel& pa,
                                const CircuitModel& circuit, const SystemConfig& cfg) {
    cfg.validate();
    pa.validate();
    circuit.validate();
    detail::require(eff.num_subarrays() == cfg.num_subarrays,
                    "fixed_scheme: channel/config subarray count mismatch");

    const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;
    double x = uniform_pa_power_sq(cfg.slot_s, eff, pa, cfg);
    if (!(x <= cap * (1.0 + kCapRelTol))) return {};
    x = std::min(x, cap);

    std::vector<double> pa_power_sq(cfg.num_subarrays, x);
    return materialize_all_active(cfg.slot_s, pa_power_sq, pa, circuit, cfg);
}

AllocationSolution uniform_optimized_duration(const EffectiveChannel& eff, const PaModel& pa,
                                              const CircuitModel& circuit,
                                              const SystemConfig& cfg) {
    cfg.validate();
    pa.validate();
    circuit.validate();
    detail::require(eff.num_subarrays() == cfg.num_subarrays,
                    "uniform_optimized_duration: channel/config subarray count mismatch");

    // Equal powers saturate all subarrays together, so the feasible range
    // is the same [t_min(M), T] as for per-subarray saturation.
    const double t_lo = min_duration(cfg.num_subarrays, eff, pa, cfg);
    if (t_lo > cfg.slot_s * (1.0 + kCapRelTol)) return {};

    const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;
    auto energy_at = [&](double t) {
        double x = uniform_pa_power_sq(t, eff, pa, cfg);
        if (!(x <= cap * (1.0 + 1e-9))) return std::numeric_limits<double>::infinity();
        x = std::min(x, cap);
        std::vector<double> pa_power_sq(cfg.num_subarrays, x);
        return all_active_energy(t, pa_power_sq, circuit, cfg);
    };

    const auto best = grid_refine_minimize(energy_at, std::min(t_lo, cfg.slot_s), cfg.slot_s,
                                           1e-10 * cfg.slot_s);
    double x = std::min(uniform_pa_power_sq(best.x, eff, pa, cfg), cap);
    std::vector<double> pa_power_sq(cfg.num_subarrays, x);
    return materialize_all_active(best.x, pa_power_sq, pa, circuit, cfg);
}

std::vector<double> allocate_total_power(const EffectiveChannel& eff, double total_power_w,
                                         double cap_w) {
    const int m_total = eff.num_subarrays();
    std::vector<double> powers(m_total, 0.0);
    detail::require(total_power_w >= 0.0 && total_power_w <= m_total * cap_w * (1.0 + 1e-9),
                    "allocate_total_power: budget outside [0, M * cap]");

    if (eff.mode == BeamformingMode::NonCoherent) {
        // Received power is linear in the per-subarray powers: fill the
        // best-gain subarrays to their cap. Equal gains share one water
        // level, so the marginal group splits its budget evenly.
        double remaining = total_power_w;
        int rank = 0;
        while (rank < m_total && remaining > 0.0) {
            const double gain = eff.eff_gain[eff.order[rank]];
            int group_end = rank + 1;
            while (group_end < m_total &&
                   eff.eff_gain[eff.order[group_end]] >= gain * (1.0 - 1e-12)) {
                ++group_end;
            }
            const int group = group_end - rank;
            if (remaining >= group * cap_w) {
                for (int r = rank; r < group_end; ++r) powers[eff.order[r]] = cap_w;
                remaining -= group * cap_w;
            } else {
                const double share = remaining / group;
                for (int r = rank; r < group_end; ++r) powers[eff.order[r]] = share;
                remaining = 0.0;
            }
            rank = group_end;
        }
        return powers;
    }

    // Coherent combining: unconstrained optimum is proportional to the
    // squared amplitude; saturated subarrays are pinned at the cap and the
    // remainder redistributed among the rest.
    std::vector<int> open(m_total);
    std::iota(open.begin(), open.end(), 0);
    double capped_power = 0.0;
    while (!open.empty()) {
        const double remaining = total_power_w - capped_power;
        if (!(remaining > 0.0)) break;
        double weight_sum = 0.0;
        for (int m : open) weight_sum += eff.amplitude[m] * eff.amplitude[m];
        if (!(weight_sum > 0.0)) break;

        std::vector<int> still_open;
        bool capped = false;
        for (int m : open) {
            const double share = eff.amplitude[m] * eff.amplitude[m] / weight_sum * remaining;
            if (share >= cap_w) {
                powers[m] = cap_w;
                capped_power += cap_w;
                capped = true;
            } else {
                still_open.push_back(m);
            }
        }
        if (!capped) {
            for (int m : open) {
                powers[m] = eff.amplitude[m] * eff.amplitude[m] / weight_sum * remaining;
            }
            break;
        }
        open = std::move(still_open);
    }
    return powers;
}

AllocationSolution water_filling_scheme(const EffectiveChannel& eff, const PaModel& pa,
                                        const CircuitModel& circuit, const SystemConfig& cfg) {
    cfg.validate();
    pa.validate();
    circuit.validate();
    detail::require(eff.num_subarrays() == cfg.num_subarrays,
                    "water_filling_scheme: channel/config subarray count mismatch");

    const double t_lo = min_duration(cfg.num_subarrays, eff, pa, cfg);
    if (t_lo > cfg.slot_s * (1.0 + kCapRelTol)) return {};

    const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;
    const double cap_p = pa.full_drive_input_w();
    const double p_to_x = pa.p_max_subarray_w / (pa.eta_max * pa.eta_max);

    // At each duration: take the uniform scheme's total power budget,
    // reshape it for maximum received power, then scale the budget down
    // until the achieved rate matches the target exactly.
    auto shaped_powers = [&](double t) -> std::vector<double> {
        const double theta = required_received_power(t, cfg);
        const double x_uniform = std::min(uniform_pa_power_sq(t, eff, pa, cfg), cap);
        const double budget = cfg.num_subarrays * x_uniform / p_to_x;

        auto received_at = [&](double b) {
            const auto p = allocate_total_power(eff, b, cap_p);
            std::vector<double> x(p.size());
            for (std::size_t m = 0; m < p.size(); ++m) x[m] = p[m] * p_to_x;
            return received_power(x, eff);
        };

        double lo = 0.0, hi = budget;
        if (received_at(hi) <= theta) return allocate_total_power(eff, hi, cap_p);
        for (int it = 0; it < 200 && (hi - lo) > 1e-15 * budget; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (received_at(mid) >= theta) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return allocate_total_power(eff, hi, cap_p);
    };

    auto energy_at = [&](double t) {
        double x_uniform = uniform_pa_power_sq(t, eff, pa, cfg);
        if (!(x_uniform <= cap * (1.0 + 1e-9))) return std::numeric_limits<double>::infinity();
        const auto p = shaped_powers(t);
        std::vector<double> x(p.size());
        for (std::size_t m = 0; m < p.size(); ++m) x[m] = p[m] * p_to_x;
        return all_active_energy(t, x, circuit, cfg);
    };

    const auto best = grid_refine_minimize(energy_at, std::min(t_lo, cfg.slot_s), cfg.slot_s,
                                           1e-10 * cfg.slot_s);
    const auto p = shaped_powers(best.x);
    std::vector<double> x(p.size());
    for (std::size_t m = 0; m < p.size(); ++m) x[m] = p[m] * p_to_x;
    return materialize_all_active(best.x, x, pa, circuit, cfg);
}

AllocationSolution run_scheme(SchemeId scheme, const EffectiveChannel& eff, const PaModel& pa,
                              const CircuitModel& circuit, const SystemConfig& cfg) {
    switch (scheme) {
        case SchemeId::Proposed: return solve(eff, pa, circuit, cfg);
        case SchemeId::Fixed: return fixed_scheme(eff, pa, circuit, cfg);
        case SchemeId::UniformDuration: return uniform_optimized_duration(eff, pa, circuit, cfg);
        case SchemeId::WaterFilling: return water_filling_scheme(eff, pa, circuit, cfg);
    }
    return {};
}

}  // namespace hybridee
