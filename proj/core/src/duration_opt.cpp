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

#include "hybridee/duration_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybridee {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kFeasibilityRelTol = 1e-12;
constexpr double kDurationTolFraction = 1e-10;

double full_drive_received_power(int active, const EffectiveChannel& eff, const PaModel& pa) {
    if (eff.mode == BeamformingMode::NonCoherent) {
        double s = 0.0;
        for (int i = 0; i < active; ++i) {
            const double g = eff.eff_gain[eff.order[i]];
            s += pa.p_max_subarray_w * pa.p_max_subarray_w * g * g;
        }
        return s;
    }
    double amp = 0.0;
    for (int i = 0; i < active; ++i) {
        amp += pa.p_max_subarray_w * eff.eff_gain[eff.order[i]];
    }
    return amp * amp;
}

}  // namespace

SegmentObjective::SegmentObjective(const EffectiveChannel& eff, const PaModel& pa,
                                   const CircuitModel& circuit, const SystemConfig& cfg)
    : eff_(&eff), pa_(&pa), circuit_(&circuit), cfg_(&cfg) {
    detail::require(eff.num_subarrays() == cfg.num_subarrays,
                    "SegmentObjective: channel/config subarray count mismatch");
}

double SegmentObjective::operator()(double t_s) const {
    auto alloc = optimal_powers(t_s, *eff_, *pa_, *cfg_);
    if (!alloc) return std::numeric_limits<double>::infinity();
    return total_energy(t_s, alloc->power_w, *circuit_, *pa_, *cfg_).total_j;
}

double min_duration(int active, const EffectiveChannel& eff, const PaModel& pa,
                    const SystemConfig& cfg) {
    detail::require(active >= 1 && active <= eff.num_subarrays(),
                    "min_duration: active count outside [1, M]");
    const double s_max = full_drive_received_power(active, eff, pa);
    const double ratio = s_max / noise_power(cfg);
    if (!(ratio > 0.0)) return std::numeric_limits<double>::infinity();
    const double rate_at_full = cfg.bandwidth_hz * std::log1p(ratio) / kLn2;
    return cfg.target_rate_bps * cfg.slot_s / rate_at_full;
}

std::optional<std::vector<Segment>> build_segments(const EffectiveChannel& eff,
                                                   const PaModel& pa,
                                                   const SystemConfig& cfg) {
    detail::require(eff.num_subarrays() == cfg.num_subarrays,
                    "build_segments: channel/config subarray count mismatch");
    const int m_total = cfg.num_subarrays;
    const double slot = cfg.slot_s;

    std::vector<double> t_min(m_total + 1, 0.0);
    for (int m = 1; m <= m_total; ++m) t_min[m] = min_duration(m, eff, pa, cfg);
    if (t_min[m_total] > slot * (1.0 + kFeasibilityRelTol)) return std::nullopt;

    std::vector<Segment> segments;
    for (int m = m_total; m >= 1; --m) {
        if (t_min[m] >= slot) continue;
        const double lo = t_min[m];
        const double hi = (m == 1) ? slot : std::min(t_min[m - 1], slot);
        if (!(lo < hi)) continue;
        segments.push_back({m, lo, hi, hi >= slot});
    }
    if (segments.empty()) {
        // Only the slot boundary itself is feasible.
        segments.push_back({m_total, slot, slot, true});
    }

    for (const auto& seg : segments) {
        if (seg.hi_s - seg.lo_s <= 1e-6 * slot) continue;
        const double mid = 0.5 * (seg.lo_s + seg.hi_s);
        const auto count = active_count(mid, eff, pa, cfg);
        if (!count || *count != seg.active_count) {
            throw std::logic_error("build_segments: active count inconsistent inside segment");
        }
    }
    return segments;
}

namespace detail {

SegmentCurvature scan_curvature(const std::function<double(double)>& f, double lo,
                                double hi, int points, double scale_time_s) {
    const double width = hi - lo;
    if (!(width > 0.0)) return {Curvature::Convex, {}};
    const double h = std::max(1e-5 * width, 1e-12 * scale_time_s);
    if (width <= 4.0 * h) return {Curvature::Convex, {}};

    const int n = std::max(points, 8);
    const double a = lo + h;
    const double b = hi - h;

    std::vector<double> centers(n), second(n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = a + (b - a) * i / (n - 1);
        const double fm = f(t - h);
        const double f0 = f(t);
        const double fp = f(t + h);
        centers[i] = t;
        second[i] = (fm - 2.0 * f0 + fp) / (h * h);
        scale = std::max(scale, std::abs(f0));
    }
    // Threshold below which the measured curvature is treated as zero: the
    // nominal flatness tolerance plus the cancellation noise floor of the
    // second difference itself.
    const double zero_tol =
        std::max(1e-9 * scale / (scale_time_s * scale_time_s),
                 64.0 * std::numeric_limits<double>::epsilon() * scale / (h * h));

    auto second_diff = [&](double t) { return f(t - h) - 2.0 * f(t) + f(t + h); };

    bool any_pos = false, any_neg = false;
    int last_sign = 0;
    double last_t = a;
    std::vector<double> roots;
    for (int i = 0; i < n; ++i) {
        int sign = 0;
        if (second[i] > zero_tol) sign = 1;
        if (second[i] < -zero_tol) sign = -1;
        if (sign == 0) continue;
        (sign > 0 ? any_pos : any_neg) = true;
        if (last_sign != 0 && sign != last_sign) {
            double ra = last_t, rb = centers[i];
            for (int it = 0; it < 100 && (rb - ra) > 1e-9 * scale_time_s; ++it) {
                const double mid = 0.5 * (ra + rb);
                const double g = second_diff(mid);
                if ((g > 0.0) == (sign > 0)) {
                    rb = mid;
                } else {
                    ra = mid;
                }
            }
            roots.push_back(0.5 * (ra + rb));
        }
        last_sign = sign;
        last_t = centers[i];
    }

    if (!roots.empty()) return {Curvature::Mixed, std::move(roots)};
    if (any_neg && !any_pos) return {Curvature::Concave, {}};
    return {Curvature::Convex, {}};
}

}  // namespace detail

SegmentCurvature classify_curvature(const Segment& seg, const SegmentObjective& obj,
                                    int scan_points) {
    const auto& cfg = obj.config();
    const double ratio = cfg.target_rate_bps / cfg.bandwidth_hz;
    if (ratio >= 1.0) {
        if (obj.channel().mode == BeamformingMode::Coherent) return {Curvature::Convex, {}};
        if (seg.active_count == 1) return {Curvature::Convex, {}};
        if (obj.circuit().linear_dynamic()) return {Curvature::Concave, {}};
    }
    auto f = [&obj](double t) { return obj(t); };
    return detail::scan_curvature(f, seg.lo_s, seg.hi_s, scan_points, cfg.slot_s);
}

ScalarMinimum minimize_segment(const Segment& seg, const SegmentCurvature& curvature,
                               const std::function<double(double)>& objective,
                               double duration_tol_s) {
    const double lo = seg.lo_s;
    const double hi = seg.hi_inclusive ? seg.hi_s : seg.hi_s - duration_tol_s;
    if (!(hi > lo)) return {lo, objective(lo)};

    switch (curvature.kind) {
        case Curvature::Concave: {
            const double f_lo = objective(lo);
            const double f_hi = objective(hi);
            return f_lo <= f_hi ? ScalarMinimum{lo, f_lo} : ScalarMinimum{hi, f_hi};
        }
        case Curvature::Convex:
            return golden_section_minimize(objective, lo, hi, duration_tol_s);
        case Curvature::Mixed:
            break;
    }

    std::vector<double> bounds{lo};
    for (double r : curvature.roots_s) {
        if (r > lo && r < hi) bounds.push_back(r);
    }
    bounds.push_back(hi);
    std::sort(bounds.begin(), bounds.end());

    ScalarMinimum best{lo, objective(lo)};
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double a = bounds[i];
        const double b = bounds[i + 1];
        if (!(b > a)) continue;
        const double ph = std::max(1e-4 * (b - a), duration_tol_s);
        const double mid = 0.5 * (a + b);
        const double bend = objective(mid - ph) - 2.0 * objective(mid) + objective(mid + ph);
        ScalarMinimum piece;
        if (bend < 0.0) {
            const double fa = objective(a);
            const double fb = objective(b);
            piece = fa <= fb ? ScalarMinimum{a, fa} : ScalarMinimum{b, fb};
        } else {
            piece = golden_section_minimize(objective, a, b, duration_tol_s);
        }
        if (piece.value < best.value) best = piece;
    }
    return best;
}

namespace {

AllocationSolution solve_impl(const EffectiveChannel& eff, const PaModel& pa,
                              const CircuitModel& circuit, const SystemConfig& cfg) {
    cfg.validate();
    pa.validate();
    circuit.validate();

    AllocationSolution out;
    const auto segments = build_segments(eff, pa, cfg);
    if (!segments) return out;

    const SegmentObjective obj(eff, pa, circuit, cfg);
    const std::function<double(double)> f = [&obj](double t) { return obj(t); };
    const double tol = kDurationTolFraction * cfg.slot_s;

    bool have_best = false;
    ScalarMinimum best{};
    for (const auto& seg : *segments) {
        const auto curvature = classify_curvature(seg, obj);
        const auto local = minimize_segment(seg, curvature, f, tol);
        if (!have_best || local.value < best.value) {
            best = local;
            have_best = true;
        }
    }

    auto alloc = optimal_powers(best.x, eff, pa, cfg);
    detail::require(alloc.has_value(), "solve: winning duration lost feasibility");
    out.feasible = true;
    out.t_star_s = best.x;
    out.m_star = alloc->m_star;
    out.powers_w = std::move(alloc->power_w);
    out.energy = total_energy(out.t_star_s, out.powers_w, circuit, pa, cfg);
    out.ee_bit_per_j = energy_efficiency(out.energy, cfg);
    return out;
}

}  // namespace

AllocationSolution solve_noncoherent(const EffectiveChannel& eff, const PaModel& pa,
                                     const CircuitModel& circuit, const SystemConfig& cfg) {
    detail::require(eff.mode == BeamformingMode::NonCoherent,
                    "solve_noncoherent: channel reduced for the wrong mode");
    return solve_impl(eff, pa, circuit, cfg);
}

AllocationSolution solve_coherent(const EffectiveChannel& eff, const PaModel& pa,
                                  const CircuitModel& circuit, const SystemConfig& cfg) {
    detail::require(eff.mode == BeamformingMode::Coherent,
                    "solve_coherent: channel reduced for the wrong mode");
    return solve_impl(eff, pa, circuit, cfg);
}

AllocationSolution solve(const EffectiveChannel& eff, const PaModel& pa,
                         const CircuitModel& circuit, const SystemConfig& cfg) {
    return solve_impl(eff, pa, circuit, cfg);
}

}  // namespace hybridee
