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

#include "hybridee/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hybridee/duration_opt.hpp"
#include "hybridee/model.hpp"
#include "hybridee/power_structure.hpp"

namespace hybridee {

namespace {

struct Candidate {
    double t = 0.0;
    double x[3] = {0.0, 0.0, 0.0};
    double energy = std::numeric_limits<double>::infinity();
};

// Indicator-convention slot energy, kept in sync with total_energy().
double quick_energy(double t, const double* x, int m_total, const CircuitModel& circuit,
                    const SystemConfig& cfg) {
    double pa_draw = 0.0;
    int active = 0;
    for (int m = 0; m < m_total; ++m) {
        if (x[m] > 0.0) {
            pa_draw += std::sqrt(x[m]);
            ++active;
        }
    }
    const double inst_rate = cfg.target_rate_bps * cfg.slot_s / t;
    double e = pa_draw * t + active * circuit.p_base_w * t +
               (active > 0 ? active * circuit.dynamic_power_w(inst_rate) * t : 0.0);
    e += active * circuit.p_idle_w * std::max(0.0, cfg.slot_s - t) +
         (m_total - active) * circuit.p_idle_w * cfg.slot_s;
    return e;
}

// Index range of grid cells hitting [x_lo, x_hi]; empty when hi < lo.
std::pair<int, int> cell_range(double x_lo, double x_hi, double step, int n) {
    if (x_hi < 0.0 || x_hi < x_lo) return {1, 0};
    const int lo = std::max(0, static_cast<int>(std::ceil(std::max(0.0, x_lo) / step - 1e-9)));
    const int hi = std::min(n - 1, static_cast<int>(std::floor(x_hi / step + 1e-9)));
    return {lo, hi};
}

}  // namespace

AllocationSolution brute_force_solve(const EffectiveChannel& eff, const PaModel& pa,
                                     const CircuitModel& circuit, const SystemConfig& cfg,
                                     const OracleGrid& grid) {
    cfg.validate();
    pa.validate();
    circuit.validate();
    const int m_total = cfg.num_subarrays;
    detail::require(m_total <= 3, "brute_force_solve: supports at most 3 subarrays");
    detail::require(eff.num_subarrays() == m_total,
                    "brute_force_solve: channel/config subarray count mismatch");
    detail::require(grid.duration_points >= 2 && grid.power_points >= 2,
                    "brute_force_solve: grid too coarse");

    const double slot = cfg.slot_s;
    const double t_lo = min_duration(m_total, eff, pa, cfg);
    if (t_lo > slot * (1.0 + 1e-12)) return {};

    const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;
    const int np = grid.power_points;
    const double step = cap / (np - 1);
    const double slack = grid.rate_slack;
    const bool coherent = eff.mode == BeamformingMode::Coherent;

    // Per-subarray rate coefficients in the original index order:
    // contribution x * coeff (non-coherent) or sqrt(x) * coeff (coherent).
    double coeff[3] = {0.0, 0.0, 0.0};
    for (int m = 0; m < m_total; ++m) {
        const double g = eff.eff_gain[m];
        coeff[m] = coherent ? g : g * g;
    }

    const int nt = grid.duration_points;
    const double t_start = std::min(t_lo, slot);
    Candidate best;

    for (int ti = 0; ti < nt; ++ti) {
        const double t = nt == 1 ? slot : t_start + (slot - t_start) * ti / (nt - 1);
        const double theta = required_received_power(t, cfg);
        const double target = coherent ? std::sqrt(theta) : theta;
        const double band_lo = target * (1.0 - slack);
        const double band_hi = target * (1.0 + slack);

        auto contribution = [&](double x, int m) {
            return coherent ? std::sqrt(x) * coeff[m] : x * coeff[m];
        };
        auto in_band = [&](double total) { return total >= band_lo && total <= band_hi; };
        auto consider = [&](double t_val, double x0, double x1, double x2) {
            double x[3] = {x0, x1, x2};
            const double e = quick_energy(t_val, x, m_total, circuit, cfg);
            if (e < best.energy) {
                best = {t_val, {x0, x1, x2}, e};
            }
        };
        // Largest x of the closing subarray whose contribution stays within
        // the band upper edge.
        auto invert = [&](double needed, int m) {
            if (coherent) {
                const double amp = needed / coeff[m];
                return amp * amp;
            }
            return needed / coeff[m];
        };

        if (m_total == 1) {
            if (!(coeff[0] > 0.0)) continue;
            const double x = invert(target, 0);
            if (x <= cap * (1.0 + slack)) consider(t, std::min(x, cap), 0.0, 0.0);
            continue;
        }

        if (m_total == 2) {
            const int last = 1;
            for (int i = 0; i < np; ++i) {
                const double x0 = i * step;
                const double c0 = contribution(x0, 0);
                if (!(coeff[last] > 0.0)) {
                    if (in_band(c0)) consider(t, x0, 0.0, 0.0);
                    continue;
                }
                const auto [j_lo, j_hi] = cell_range(invert(std::max(0.0, band_lo - c0), last),
                                                     invert(std::max(0.0, band_hi - c0), last),
                                                     step, np);
                for (int j = j_lo; j <= j_hi; ++j) {
                    const double x1 = j * step;
                    if (in_band(c0 + contribution(x1, last))) consider(t, x0, x1, 0.0);
                }
            }
            continue;
        }

        for (int i = 0; i < np; ++i) {
            const double x0 = i * step;
            const double c0 = contribution(x0, 0);
            for (int j = 0; j < np; ++j) {
                const double x1 = j * step;
                const double c01 = c0 + contribution(x1, 1);
                if (!(coeff[2] > 0.0)) {
                    if (in_band(c01)) consider(t, x0, x1, 0.0);
                    continue;
                }
                const auto [k_lo, k_hi] = cell_range(invert(std::max(0.0, band_lo - c01), 2),
                                                     invert(std::max(0.0, band_hi - c01), 2),
                                                     step, np);
                for (int k = k_lo; k <= k_hi; ++k) {
                    const double x2 = k * step;
                    if (in_band(c01 + contribution(x2, 2))) consider(t, x0, x1, x2);
                }
            }
        }
    }

    if (!std::isfinite(best.energy)) return {};

    AllocationSolution out;
    out.feasible = true;
    out.t_star_s = best.t;
    const double x_to_p = pa.eta_max * pa.eta_max / pa.p_max_subarray_w;
    out.powers_w.resize(m_total);
    out.m_star = 0;
    for (int m = 0; m < m_total; ++m) {
        out.powers_w[m] = best.x[m] * x_to_p;
        if (best.x[m] > 0.0) ++out.m_star;
    }
    out.energy = total_energy(best.t, out.powers_w, circuit, pa, cfg);
    out.ee_bit_per_j = energy_efficiency(out.energy, cfg);
    return out;
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

VerificationReport verify_solution(const AllocationSolution& sol, const EffectiveChannel& eff,
                                   const PaModel& pa, const CircuitModel& circuit,
                                   const SystemConfig& cfg) {
    detail::require(sol.feasible, "verify_solution: solution must be feasible");
    detail::require(sol.powers_w.size() == static_cast<std::size_t>(cfg.num_subarrays),
                    "verify_solution: powers size mismatch");
    constexpr double kTol = 1e-9;

    VerificationReport report;
    const double p_to_x = pa.p_max_subarray_w / (pa.eta_max * pa.eta_max);
    std::vector<double> x(sol.powers_w.size());
    for (std::size_t m = 0; m < x.size(); ++m) x[m] = sol.powers_w[m] * p_to_x;

    {
        const double theta = required_received_power(sol.t_star_s, cfg);
        const double s = received_power(x, eff);
        const double residual = std::abs(s - theta) / theta;
        report.checks.push_back({"rate_equality", residual <= kTol, residual});
    }
    {
        const double full = pa.full_drive_input_w();
        double worst = 0.0;
        for (double p : sol.powers_w) {
            worst = std::max(worst, std::max(p - full, -p) / full);
        }
        report.checks.push_back({"power_bounds", worst <= kTol, worst});
    }
    {
        const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < eff.order.size(); ++i) {
            worst = std::max(worst, (x[eff.order[i + 1]] - x[eff.order[i]]) / cap);
        }
        report.checks.push_back({"power_ordering", worst <= kTol, worst});
    }
    {
        const double t_lo = min_duration(cfg.num_subarrays, eff, pa, cfg);
        const double below = (t_lo - sol.t_star_s) / cfg.slot_s;
        const double above = (sol.t_star_s - cfg.slot_s) / cfg.slot_s;
        const double worst = std::max({0.0, below, above});
        report.checks.push_back({"duration_bounds", worst <= kTol, worst});
    }
    try {
        const auto recomputed =
            total_energy(sol.t_star_s, sol.powers_w, sol.m_star, circuit, pa, cfg);
        const double residual =
            std::abs(recomputed.total_j - sol.energy.total_j) / recomputed.total_j;
        report.checks.push_back({"energy_consistency", residual <= kTol, residual});
    } catch (const std::exception&) {
        // Powers or duration outside the model's domain; the bound checks
        // above carry the diagnosis.
        report.checks.push_back(
            {"energy_consistency", false, std::numeric_limits<double>::infinity()});
    }
    return report;
}

}  // namespace hybridee
