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

#include "hybridee/power_structure.hpp"

#include <algorithm>
#include <cmath>

namespace hybridee {

namespace {

// Boundary comparisons between the rate requirement and full-drive prefix
// sums tolerate this much relative rounding before declaring a larger
// active count (or infeasibility).
constexpr double kBoundaryRelTol = 1e-12;
// Residuals below this fraction of the cap are rounding noise from a
// prefix boundary; the previous count already meets the rate.
constexpr double kResidualFloorRel = 1e-18;

// Rate requirement and per-subarray full-drive contribution on the scale
// where the constraint is a plain prefix sum: (theta, p_max^2 * gain^2) for
// non-coherent, (sqrt(theta), p_max * gain) for coherent.
struct PrefixProblem {
    double target = 0.0;
    std::vector<double> contribution; // ranked order
};

PrefixProblem make_prefix_problem(double t_s, const EffectiveChannel& eff,
                                  const PaModel& pa, const SystemConfig& cfg) {
    const double theta = required_received_power(t_s, cfg);
    PrefixProblem prob;
    prob.contribution.resize(eff.order.size());
    if (eff.mode == BeamformingMode::NonCoherent) {
        prob.target = theta;
        for (std::size_t i = 0; i < eff.order.size(); ++i) {
            const double g = eff.eff_gain[eff.order[i]];
            prob.contribution[i] = pa.p_max_subarray_w * pa.p_max_subarray_w * g * g;
        }
    } else {
        prob.target = std::sqrt(theta);
        for (std::size_t i = 0; i < eff.order.size(); ++i) {
            prob.contribution[i] = pa.p_max_subarray_w * eff.eff_gain[eff.order[i]];
        }
    }
    return prob;
}

std::optional<int> count_from_prefix(const PrefixProblem& prob) {
    double prefix = 0.0;
    for (std::size_t i = 0; i < prob.contribution.size(); ++i) {
        prefix += prob.contribution[i];
        if (prefix >= prob.target * (1.0 - kBoundaryRelTol)) {
            return static_cast<int>(i) + 1;
        }
    }
    return std::nullopt;
}

}  // namespace

double received_power(std::span<const double> pa_power_sq, const EffectiveChannel& eff) {
    detail::require(pa_power_sq.size() == eff.eff_gain.size(),
                    "received_power: allocation size mismatch");
    if (eff.mode == BeamformingMode::NonCoherent) {
        double s = 0.0;
        for (std::size_t m = 0; m < pa_power_sq.size(); ++m) {
            s += pa_power_sq[m] * eff.eff_gain[m] * eff.eff_gain[m];
        }
        return s;
    }
    double amp = 0.0;
    for (std::size_t m = 0; m < pa_power_sq.size(); ++m) {
        amp += std::sqrt(pa_power_sq[m]) * eff.eff_gain[m];
    }
    return amp * amp;
}

std::optional<int> active_count(double t_s, const EffectiveChannel& eff,
                                const PaModel& pa, const SystemConfig& cfg) {
    detail::require(eff.num_subarrays() == cfg.num_subarrays,
                    "active_count: channel/config subarray count mismatch");
    return count_from_prefix(make_prefix_problem(t_s, eff, pa, cfg));
}

std::optional<PowerAllocation> optimal_powers(double t_s, const EffectiveChannel& eff,
                                              const PaModel& pa, const SystemConfig& cfg) {
    detail::require(eff.num_subarrays() == cfg.num_subarrays,
                    "optimal_powers: channel/config subarray count mismatch");
    const auto prob = make_prefix_problem(t_s, eff, pa, cfg);
    auto count = count_from_prefix(prob);
    if (!count) return std::nullopt;

    const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;
    const double floor = kResidualFloorRel * cap;
    int m_star = *count;

    double prefix_before = 0.0;
    for (int i = 0; i + 1 < m_star; ++i) prefix_before += prob.contribution[i];

    const int residual_rank = m_star - 1;
    const double gain = eff.eff_gain[eff.order[residual_rank]];
    double residual_x;
    if (eff.mode == BeamformingMode::NonCoherent) {
        residual_x = (prob.target - prefix_before) / (gain * gain);
    } else {
        const double amp = (prob.target - prefix_before) / gain;
        residual_x = amp * amp;
    }

    if (residual_x < floor && m_star >= 2) {
        // The requirement sits on the previous prefix boundary up to
        // rounding; the previous count at full drive already meets it.
        m_star -= 1;
        residual_x = cap;
    }
    residual_x = std::clamp(residual_x, floor, cap);

    PowerAllocation out;
    out.m_star = m_star;
    out.pa_power_sq.assign(eff.eff_gain.size(), 0.0);
    for (int i = 0; i < m_star - 1; ++i) out.pa_power_sq[eff.order[i]] = cap;
    out.pa_power_sq[eff.order[m_star - 1]] = residual_x;

    const double x_to_p = pa.eta_max * pa.eta_max / pa.p_max_subarray_w;
    out.power_w.resize(out.pa_power_sq.size());
    for (std::size_t m = 0; m < out.power_w.size(); ++m) {
        out.power_w[m] = out.pa_power_sq[m] * x_to_p;
    }
    return out;
}

PowerAllocation swap_improves(const PowerAllocation& alloc, const EffectiveChannel& eff,
                              const PaModel& pa) {
    detail::require(alloc.pa_power_sq.size() == eff.eff_gain.size(),
                    "swap_improves: allocation size mismatch");
    const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;
    const int m_total = eff.num_subarrays();

    PowerAllocation out = alloc;
    auto x_at = [&](int rank) -> double& { return out.pa_power_sq[eff.order[rank]]; };

    // Fix the first ranked pair that breaks the non-increasing chain, then
    // rescan; each exchange preserves the received power and never raises
    // sum(sqrt(x)).
    for (int pass = 0; pass < m_total * m_total; ++pass) {
        int lo = -1, hi = -1;
        for (int i = 0; i + 1 < m_total && lo < 0; ++i) {
            for (int j = i + 1; j < m_total; ++j) {
                if (x_at(j) > x_at(i)) {
                    lo = i;
                    hi = j;
                    break;
                }
            }
        }
        if (lo < 0) break;

        const double g_lo = eff.eff_gain[eff.order[lo]];
        const double g_hi = eff.eff_gain[eff.order[hi]];
        const double x_lo = x_at(lo);
        const double x_hi = x_at(hi);
        detail::require(g_lo > 0.0, "swap_improves: zero-gain subarray cannot host power");

        double moved;
        if (eff.mode == BeamformingMode::NonCoherent) {
            const double pair_power = x_lo * g_lo * g_lo + x_hi * g_hi * g_hi;
            moved = (pair_power - x_lo * g_hi * g_hi) / (g_lo * g_lo);
        } else {
            const double pair_amp = std::sqrt(x_lo) * g_lo + std::sqrt(x_hi) * g_hi;
            const double amp = (pair_amp - std::sqrt(x_lo) * g_hi) / g_lo;
            moved = amp * amp;
        }
        x_at(lo) = std::min(moved, cap);
        x_at(hi) = x_lo;
    }

    const double x_to_p = pa.eta_max * pa.eta_max / pa.p_max_subarray_w;
    out.m_star = 0;
    for (std::size_t m = 0; m < out.pa_power_sq.size(); ++m) {
        out.power_w[m] = out.pa_power_sq[m] * x_to_p;
        if (out.pa_power_sq[m] > 0.0) ++out.m_star;
    }
    return out;
}

}  // namespace hybridee
