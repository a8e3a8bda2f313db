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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "hybridee/duration_opt.hpp"
#include "hybridee/oracle.hpp"
#include "test_support.hpp"

using namespace hybridee;

namespace {

// Independent inversion of the rate constraint: bisect the duration at
// which the requirement equals the given received power.
double bisect_min_duration(double s_max, const SystemConfig& cfg) {
    const double hi = cfg.slot_s;
    double lo = hi;
    // Descend until the requirement exceeds s_max, bracketing the root.
    while (required_received_power(lo, cfg) <= s_max) lo *= 0.5;
    double a = lo, b = hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        if (required_received_power(mid, cfg) > s_max) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("min duration hits the slot boundary when the rate exactly fills it") {
    const PaModel pa = test::unit_pa();
    // log2(1 + s_max) = 1 with s_max = 1: full-power rate equals W, so a
    // rate target of W * (T/T) needs the whole slot.
    const auto eff = test::make_channel(BeamformingMode::NonCoherent, {1.0}, pa);
    const SystemConfig cfg = test::unit_config(1.0, 1);
    CHECK(min_duration(1, eff, pa, cfg) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("min duration is linear in the rate target") {
    const auto inst = test::feasible_instance(4, 4, 20e6, 7);
    SystemConfig cfg = inst.scenario.system;
    const double base = min_duration(3, inst.noncoherent, inst.scenario.pa, cfg);
    cfg.target_rate_bps *= 2.0;
    CHECK(min_duration(3, inst.noncoherent, inst.scenario.pa, cfg) ==
          doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("min duration for two equal subarrays matches the closed form and a root finder") {
    const PaModel pa = test::unit_pa();
    const auto eff = test::make_channel(BeamformingMode::NonCoherent, {1.0, 1.0}, pa);
    const SystemConfig cfg = test::unit_config(1.0, 2); // r * T / W = 1, noise 1
    const double t2 = min_duration(2, eff, pa, cfg);
    const double t1 = min_duration(1, eff, pa, cfg);
    CHECK(t2 == doctest::Approx(1.0 / std::log2(3.0)).epsilon(1e-12));
    CHECK(t1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t2 == doctest::Approx(bisect_min_duration(2.0, cfg)).epsilon(1e-9));
    CHECK(t1 == doctest::Approx(bisect_min_duration(1.0, cfg)).epsilon(1e-9));
}

TEST_CASE("segments partition the feasible range") {
    const PaModel pa = test::unit_pa();

    SUBCASE("all counts feasible yields one segment per count") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(1.0, 2);
        const auto segs = build_segments(eff, pa, cfg);
        REQUIRE(segs.has_value());
        REQUIRE(segs->size() == 2);
        CHECK((*segs)[0].active_count == 2);
        CHECK((*segs)[0].lo_s == doctest::Approx(1.0 / std::log2(6.0)).epsilon(1e-12));
        CHECK((*segs)[0].hi_s == doctest::Approx(1.0 / std::log2(5.0)).epsilon(1e-12));
        CHECK_FALSE((*segs)[0].hi_inclusive);
        CHECK((*segs)[1].active_count == 1);
        CHECK((*segs)[1].hi_s == cfg.slot_s);
        CHECK((*segs)[1].hi_inclusive);
    }

    SUBCASE("first non-empty count appears when small counts cannot finish in a slot") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {1.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(1.2, 2);
        const auto segs = build_segments(eff, pa, cfg);
        REQUIRE(segs.has_value());
        REQUIRE(segs->size() == 1);
        CHECK((*segs)[0].active_count == 2);
        CHECK((*segs)[0].lo_s == doctest::Approx(1.2 / std::log2(3.0)).epsilon(1e-12));
        CHECK((*segs)[0].hi_s == cfg.slot_s);
        CHECK((*segs)[0].hi_inclusive);
    }

    SUBCASE("unreachable rate is infeasible") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {1.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(2.0, 2); // t_min^2 = 2/log2(3) > 1
        CHECK_FALSE(build_segments(eff, pa, cfg).has_value());
    }

    SUBCASE("a rate feasible only at the slot edge leaves a single point") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {1.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(std::log2(3.0), 2); // t_min^2 = T exactly
        const auto segs = build_segments(eff, pa, cfg);
        REQUIRE(segs.has_value());
        REQUIRE(segs->size() == 1);
        CHECK((*segs)[0].lo_s == cfg.slot_s);
        CHECK((*segs)[0].hi_s == cfg.slot_s);
        CHECK((*segs)[0].hi_inclusive);

        CircuitModel circuit;
        circuit.p_base_w = 0.05;
        circuit.p_idle_w = 0.03;
        const auto sol = solve_noncoherent(eff, pa, circuit, cfg);
        REQUIRE(sol.feasible);
        CHECK(sol.t_star_s == cfg.slot_s);
        CHECK(sol.m_star == 2);
        for (double p : sol.powers_w) {
            CHECK(p == doctest::Approx(pa.full_drive_input_w()).epsilon(1e-9));
        }
    }

    SUBCASE("random instances: disjoint cover with consistent counts") {
        for (int k = 0; k < 10; ++k) {
            const auto inst = test::feasible_instance(6, 4, 45e6, 600 + k);
            for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
                const auto& cfg = inst.scenario.system;
                const auto segs = build_segments(*eff, inst.scenario.pa, cfg);
                REQUIRE(segs.has_value());
                REQUIRE(!segs->empty());
                CHECK(segs->front().lo_s ==
                      doctest::Approx(min_duration(6, *eff, inst.scenario.pa, cfg)).epsilon(1e-12));
                CHECK(segs->back().hi_s == cfg.slot_s);
                CHECK(segs->back().hi_inclusive);
                for (std::size_t i = 0; i + 1 < segs->size(); ++i) {
                    CHECK((*segs)[i].hi_s == doctest::Approx((*segs)[i + 1].lo_s).epsilon(1e-12));
                    CHECK((*segs)[i].active_count == (*segs)[i + 1].active_count + 1);
                    CHECK((*segs)[i].lo_s < (*segs)[i].hi_s);
                }
                const CounterRng rng(17, k);
                for (const auto& seg : *segs) {
                    for (int i = 0; i < 5; ++i) {
                        const double t =
                            seg.lo_s + (seg.hi_s - seg.lo_s) *
                                           (0.01 + 0.98 * rng.uniform01(100 * seg.active_count + i));
                        const auto count = active_count(t, *eff, inst.scenario.pa, cfg);
                        REQUIRE(count.has_value());
                        CHECK(*count == seg.active_count);
                    }
                }
            }
        }
    }
}

TEST_CASE("curvature classification follows the analytic rules when r/W >= 1") {
    const auto inst = test::feasible_instance(5, 4, 40e6, 81);
    const auto& cfg = inst.scenario.system;
    REQUIRE(cfg.target_rate_bps / cfg.bandwidth_hz >= 1.0);

    const SegmentObjective obj_c(inst.coherent, inst.scenario.pa, inst.scenario.circuit, cfg);
    const auto segs_c = build_segments(inst.coherent, inst.scenario.pa, cfg);
    REQUIRE(segs_c.has_value());
    for (const auto& seg : *segs_c) {
        CHECK(classify_curvature(seg, obj_c).kind == Curvature::Convex);
    }

    const SegmentObjective obj_n(inst.noncoherent, inst.scenario.pa, inst.scenario.circuit, cfg);
    const auto segs_n = build_segments(inst.noncoherent, inst.scenario.pa, cfg);
    REQUIRE(segs_n.has_value());
    for (const auto& seg : *segs_n) {
        const auto curvature = classify_curvature(seg, obj_n);
        if (seg.active_count == 1) {
            CHECK(curvature.kind == Curvature::Convex);
        } else {
            CHECK(curvature.kind == Curvature::Concave);
        }
    }
}

TEST_CASE("finite differences agree with the analytic curvature class") {
    for (int k = 0; k < 6; ++k) {
        const auto inst = test::feasible_instance(5, 8, 30e6 + 15e6 * k, 7000 + k);
        const auto& cfg = inst.scenario.system;
        for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
            const SegmentObjective obj(*eff, inst.scenario.pa, inst.scenario.circuit, cfg);
            const auto segs = build_segments(*eff, inst.scenario.pa, cfg);
            REQUIRE(segs.has_value());
            const CounterRng rng(4000 + k, eff->mode == BeamformingMode::Coherent ? 1 : 0);
            for (const auto& seg : *segs) {
                const auto curvature = classify_curvature(seg, obj);
                const double h = 1e-6 * cfg.slot_s;
                const double lo = seg.lo_s + 2 * h;
                const double hi = seg.hi_s - 2 * h;
                if (!(hi > lo)) continue;
                for (int i = 0; i < 20; ++i) {
                    const double t = lo + (hi - lo) * rng.uniform01(64 * seg.active_count + i);
                    const double f0 = obj(t);
                    const double bend = (obj(t - h) - 2.0 * f0 + obj(t + h)) / (h * h);
                    const double zero_tol =
                        std::max(1e-9 * f0 / (cfg.slot_s * cfg.slot_s),
                                 64.0 * std::numeric_limits<double>::epsilon() * f0 / (h * h));
                    if (curvature.kind == Curvature::Convex) {
                        CHECK(bend >= -zero_tol);
                    } else if (curvature.kind == Curvature::Concave) {
                        CHECK(bend <= zero_tol);
                    }
                }
            }
        }
    }
}

TEST_CASE("low rate-to-bandwidth ratios are classified numerically with the bend root") {
    // Unit scale: the objective's curvature flips where the rate exponent
    // crosses one, i.e. at t = r * T / W = 0.5.
    const PaModel pa = test::unit_pa();
    const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0}, pa);
    SystemConfig cfg = test::unit_config(0.5, 1);
    CircuitModel circuit;
    circuit.p_base_w = 0.05;
    circuit.p_idle_w = 0.03;
    circuit.epsilon_j_per_bit = 0.0;

    const SegmentObjective obj(eff, pa, circuit, cfg);
    const auto segs = build_segments(eff, pa, cfg);
    REQUIRE(segs.has_value());
    REQUIRE(segs->size() == 1);
    CHECK(segs->front().lo_s < 0.5);

    const auto curvature = classify_curvature(segs->front(), obj);
    REQUIRE(curvature.kind == Curvature::Mixed);
    REQUIRE(curvature.roots_s.size() == 1);
    CHECK(curvature.roots_s[0] == doctest::Approx(0.5).epsilon(0.02));

    // The segment minimum from the mixed path matches a dense scan.
    const std::function<double(double)> f = [&obj](double t) { return obj(t); };
    const auto best = minimize_segment(segs->front(), curvature, f, 1e-10 * cfg.slot_s);
    double scan_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 20000; ++i) {
        const double t =
            segs->front().lo_s + (segs->front().hi_s - segs->front().lo_s) * i / 20000.0;
        scan_best = std::min(scan_best, obj(t));
    }
    CHECK(best.value <= scan_best * (1.0 + 1e-9));
}

TEST_CASE("convex nonlinear circuit power routes through the numeric classifier") {
    const auto inst = test::feasible_instance(4, 8, 40e6, 31415);
    Scenario s = inst.scenario;
    const double eps = s.circuit.epsilon_j_per_bit;
    // Rate term grows quadratically: convex, non-decreasing, zero at zero.
    s.circuit.dynamic_power_fn = [eps](double rate) { return eps * rate * (1.0 + rate / 200e6); };
    REQUIRE_FALSE(s.circuit.linear_dynamic());
    REQUIRE(s.system.target_rate_bps / s.system.bandwidth_hz >= 1.0);

    for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
        const SegmentObjective obj(*eff, s.pa, s.circuit, s.system);
        const auto segs = build_segments(*eff, s.pa, s.system);
        REQUIRE(segs.has_value());
        const CounterRng rng(271828, eff->mode == BeamformingMode::Coherent ? 1 : 0);
        for (const auto& seg : *segs) {
            const auto curvature = classify_curvature(seg, obj);
            if (eff->mode == BeamformingMode::Coherent || seg.active_count == 1) {
                // Both curvature terms are non-negative here.
                CHECK(curvature.kind == Curvature::Convex);
            }

            // Whatever the classification, it must agree with finite
            // differences away from any reported roots.
            const double h = 1e-5 * s.system.slot_s;
            const double lo = seg.lo_s + 2 * h;
            const double hi = (seg.hi_inclusive ? seg.hi_s : seg.hi_s - h) - 2 * h;
            if (!(hi > lo)) continue;
            for (int i = 0; i < 12; ++i) {
                const double t = lo + (hi - lo) * rng.uniform01(32 * seg.active_count + i);
                bool near_root = false;
                for (double r : curvature.roots_s) {
                    if (std::abs(t - r) < 0.02 * (seg.hi_s - seg.lo_s)) near_root = true;
                }
                if (near_root) continue;
                const double f0 = obj(t);
                const double bend = (obj(t - h) - 2.0 * f0 + obj(t + h)) / (h * h);
                const double zero_tol =
                    std::max(1e-9 * f0 / (s.system.slot_s * s.system.slot_s),
                             64.0 * std::numeric_limits<double>::epsilon() * f0 / (h * h));
                bool expect_convex = false;
                switch (curvature.kind) {
                    case Curvature::Convex: expect_convex = true; break;
                    case Curvature::Concave: expect_convex = false; break;
                    case Curvature::Mixed: {
                        int below = 0;
                        for (double r : curvature.roots_s) {
                            if (r < t) ++below;
                        }
                        // Sign alternates across roots; probe the first piece.
                        const double probe = 0.5 * (seg.lo_s + (curvature.roots_s.empty()
                                                                    ? seg.hi_s
                                                                    : curvature.roots_s.front()));
                        const double first_bend =
                            obj(probe - h) - 2.0 * obj(probe) + obj(probe + h);
                        expect_convex = (first_bend > 0.0) == (below % 2 == 0);
                        break;
                    }
                }
                if (expect_convex) {
                    CHECK(bend >= -zero_tol);
                } else {
                    CHECK(bend <= zero_tol);
                }
            }
        }
    }
}

TEST_CASE("solver matches the oracle under a nonlinear circuit model") {
    OracleGrid grid;
    grid.duration_points = 500;
    grid.power_points = 160;
    const auto inst = test::feasible_instance(2, 4, 35e6, 2718);
    Scenario s = inst.scenario;
    const double eps = s.circuit.epsilon_j_per_bit;
    s.circuit.dynamic_power_fn = [eps](double rate) { return eps * rate * (1.0 + rate / 100e6); };

    for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
        const auto sol = solve(*eff, s.pa, s.circuit, s.system);
        const auto ref = brute_force_solve(*eff, s.pa, s.circuit, s.system, grid);
        REQUIRE(sol.feasible);
        REQUIRE(ref.feasible);
        CHECK(sol.energy.total_j <= ref.energy.total_j * 1.005);
    }

    // The override feeds the energy account.
    std::vector<double> powers(2, 0.5 * s.pa.full_drive_input_w());
    const double t = 0.8 * s.system.slot_s;
    const auto e = total_energy(t, powers, s.circuit, s.pa, s.system);
    const double inst_rate = s.system.target_rate_bps * s.system.slot_s / t;
    CHECK(e.dynamic_circuit_j ==
          doctest::Approx(2.0 * eps * inst_rate * (1.0 + inst_rate / 100e6) * t).epsilon(1e-12));
}

TEST_CASE("segment minimization honors the curvature rules") {
    Segment seg;
    seg.active_count = 1;
    seg.lo_s = 0.2;
    seg.hi_s = 0.8;
    seg.hi_inclusive = false;
    const double tol = 1e-10;

    SUBCASE("monotone increasing convex objective returns the lower end") {
        const auto best =
            minimize_segment(seg, {Curvature::Convex, {}}, [](double t) { return std::exp(t); }, tol);
        CHECK(best.x == 0.2);
    }

    SUBCASE("parabola returns its interior vertex") {
        const auto best = minimize_segment(
            seg, {Curvature::Convex, {}}, [](double t) { return (t - 0.47) * (t - 0.47); }, tol);
        CHECK(best.x == doctest::Approx(0.47).epsilon(1e-6));
    }

    SUBCASE("concave objective returns the better endpoint one step inside") {
        const auto concave = [](double t) { return -(t - 0.3) * (t - 0.3); };
        const auto best = minimize_segment(seg, {Curvature::Concave, {}}, concave, tol);
        CHECK(best.x == doctest::Approx(seg.hi_s - tol));
        CHECK(best.value == doctest::Approx(concave(seg.hi_s - tol)));

        const auto concave_right = [](double t) { return -(t - 0.75) * (t - 0.75); };
        const auto best_lo = minimize_segment(seg, {Curvature::Concave, {}}, concave_right, tol);
        CHECK(best_lo.x == seg.lo_s);
    }
}

TEST_CASE("single-subarray solve reduces to a convex search") {
    const PaModel pa = test::unit_pa();
    const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0}, pa);
    const SystemConfig cfg = test::unit_config(1.0, 1);
    CircuitModel circuit;
    circuit.p_base_w = 0.05;
    circuit.p_idle_w = 0.03;
    circuit.epsilon_j_per_bit = 1e-3;

    const auto sol = solve_noncoherent(eff, pa, circuit, cfg);
    REQUIRE(sol.feasible);
    CHECK(sol.m_star == 1);

    const SegmentObjective obj(eff, pa, circuit, cfg);
    const auto segs = build_segments(eff, pa, cfg);
    const auto direct = golden_section_minimize([&obj](double t) { return obj(t); },
                                                segs->front().lo_s, cfg.slot_s, 1e-10);
    CHECK(sol.energy.total_j == doctest::Approx(direct.value).epsilon(1e-9));
}

TEST_CASE("solver matches the exhaustive oracle on small instances") {
    OracleGrid grid;
    grid.duration_points = 600;
    grid.power_points = 200;

    for (int k = 0; k < 4; ++k) {
        const auto inst = test::feasible_instance(2, 4, 25e6 + 12e6 * k, 1234 + k);
        for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
            const auto sol = solve(*eff, inst.scenario.pa, inst.scenario.circuit,
                                   inst.scenario.system);
            const auto ref = brute_force_solve(*eff, inst.scenario.pa, inst.scenario.circuit,
                                               inst.scenario.system, grid);
            REQUIRE(sol.feasible);
            REQUIRE(ref.feasible);
            CHECK(sol.energy.total_j <= ref.energy.total_j * 1.005);
        }
    }

    OracleGrid grid3;
    grid3.duration_points = 300;
    grid3.power_points = 90;
    for (int k = 0; k < 2; ++k) {
        const auto inst = test::feasible_instance(3, 4, 30e6 + 10e6 * k, 555 + k);
        for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
            const auto sol = solve(*eff, inst.scenario.pa, inst.scenario.circuit,
                                   inst.scenario.system);
            const auto ref = brute_force_solve(*eff, inst.scenario.pa, inst.scenario.circuit,
                                               inst.scenario.system, grid3);
            REQUIRE(sol.feasible);
            REQUIRE(ref.feasible);
            CHECK(sol.energy.total_j <= ref.energy.total_j * 1.005);
        }
    }
}

TEST_CASE("a rate near the channel limit pins dimension and power") {
    const PaModel pa = test::unit_pa();
    const auto eff = test::make_channel(BeamformingMode::NonCoherent, {1.2, 1.0}, pa);
    // Achievable limit is log2(1 + 2.44); target 99% of it.
    const double limit = std::log2(1.0 + 1.2 * 1.2 + 1.0);
    const SystemConfig cfg = test::unit_config(0.99 * limit, 2);
    CircuitModel circuit;
    circuit.p_base_w = 0.05;
    circuit.p_idle_w = 0.03;

    const auto sol = solve_noncoherent(eff, pa, circuit, cfg);
    REQUIRE(sol.feasible);
    CHECK(sol.m_star == 2);
    const double t_lo = min_duration(2, eff, pa, cfg);
    CHECK(sol.t_star_s >= t_lo * (1.0 - 1e-12));
    for (double p : sol.powers_w) {
        CHECK(p >= 0.9 * pa.full_drive_input_w());
    }
}

TEST_CASE("solved durations stay feasible and meet the rate exactly") {
    for (int k = 0; k < 8; ++k) {
        const auto inst = test::feasible_instance(6, 8, 35e6 + 7e6 * k, 9100 + k);
        const auto& cfg = inst.scenario.system;
        const auto coh = solve_coherent(inst.coherent, inst.scenario.pa, inst.scenario.circuit, cfg);
        const auto non =
            solve_noncoherent(inst.noncoherent, inst.scenario.pa, inst.scenario.circuit, cfg);
        REQUIRE(coh.feasible);
        REQUIRE(non.feasible);

        for (const auto* sol : {&coh, &non}) {
            const auto& eff = sol == &coh ? inst.coherent : inst.noncoherent;
            const double t_lo = min_duration(cfg.num_subarrays, eff, inst.scenario.pa, cfg);
            CHECK(sol->t_star_s >= t_lo * (1.0 - 1e-12));
            CHECK(sol->t_star_s <= cfg.slot_s * (1.0 + 1e-12));

            const double p_to_x =
                inst.scenario.pa.p_max_subarray_w /
                (inst.scenario.pa.eta_max * inst.scenario.pa.eta_max);
            std::vector<double> x(sol->powers_w.size());
            for (std::size_t m = 0; m < x.size(); ++m) x[m] = sol->powers_w[m] * p_to_x;
            const double rate = achieved_average_rate_bps(sol->t_star_s, received_power(x, eff), cfg);
            CHECK(rate == doctest::Approx(cfg.target_rate_bps).epsilon(1e-9));
        }

        // Explicit channel knowledge shortens the optimal transmit window.
        CHECK(coh.t_star_s <= non.t_star_s * (1.0 + 1e-9));
    }
}
