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
#include <optional>

#include "doctest.h"
#include "hybridee/power_structure.hpp"
#include "test_support.hpp"

using namespace hybridee;

namespace {

// Exhaustive scan over the active count, independent of the prefix logic:
// the smallest m whose full-drive received power covers the requirement.
std::optional<int> scan_active_count(double theta, const EffectiveChannel& eff,
                                     const PaModel& pa) {
    const int m_total = eff.num_subarrays();
    for (int m = 1; m <= m_total; ++m) {
        std::vector<double> x(m_total, 0.0);
        for (int i = 0; i < m; ++i) x[eff.order[i]] = pa.p_max_subarray_w * pa.p_max_subarray_w;
        if (received_power(x, eff) >= theta * (1.0 - 1e-12)) return m;
    }
    return std::nullopt;
}

double pa_draw_sum(std::span<const double> pa_power_sq) {
    double s = 0.0;
    for (double x : pa_power_sq) s += std::sqrt(x);
    return s;
}

using test::random_rate_matched;

}  // namespace

TEST_CASE("active count against an exhaustive scan on crafted channels") {
    const PaModel pa = test::unit_pa();

    SUBCASE("single subarray boundary") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0}, pa);
        // theta(1) = 2^r - 1 = 4 exactly on the full-drive boundary.
        const SystemConfig cfg = test::unit_config(std::log2(5.0), 1);
        const auto m = active_count(1.0, eff, pa, cfg);
        REQUIRE(m.has_value());
        CHECK(*m == 1);
    }

    SUBCASE("non-coherent prefix 4 < 4.5 <= 5") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(std::log2(5.5), 2);
        const double theta = required_received_power(1.0, cfg);
        CHECK(theta == doctest::Approx(4.5).epsilon(1e-12));
        const auto m = active_count(1.0, eff, pa, cfg);
        REQUIRE(m.has_value());
        CHECK(*m == 2);
        CHECK(*m == *scan_active_count(theta, eff, pa));
    }

    SUBCASE("coherent prefix 2 < 2.5 <= 3") {
        const auto eff = test::make_channel(BeamformingMode::Coherent, {2.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(std::log2(1.0 + 6.25), 2);
        const double theta = required_received_power(1.0, cfg);
        CHECK(std::sqrt(theta) == doctest::Approx(2.5).epsilon(1e-12));
        const auto m = active_count(1.0, eff, pa, cfg);
        REQUIRE(m.has_value());
        CHECK(*m == 2);
        CHECK(*m == *scan_active_count(theta, eff, pa));
    }

    SUBCASE("infeasible when full drive falls short") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {1.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(std::log2(4.0), 2); // theta = 3 > 2
        CHECK_FALSE(active_count(1.0, eff, pa, cfg).has_value());
    }
}

TEST_CASE("optimal powers close the rate constraint with the residual subarray") {
    const PaModel pa = test::unit_pa();

    SUBCASE("non-coherent residual x = 0.5") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(std::log2(5.5), 2);
        const auto alloc = optimal_powers(1.0, eff, pa, cfg);
        REQUIRE(alloc.has_value());
        CHECK(alloc->m_star == 2);
        CHECK(alloc->pa_power_sq[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(alloc->pa_power_sq[1] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(received_power(alloc->pa_power_sq, eff) == doctest::Approx(4.5).epsilon(1e-12));
    }

    SUBCASE("coherent residual x = 0.25") {
        const auto eff = test::make_channel(BeamformingMode::Coherent, {2.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(std::log2(7.25), 2);
        const auto alloc = optimal_powers(1.0, eff, pa, cfg);
        REQUIRE(alloc.has_value());
        CHECK(alloc->m_star == 2);
        CHECK(alloc->pa_power_sq[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(alloc->pa_power_sq[1] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(std::sqrt(received_power(alloc->pa_power_sq, eff)) ==
              doctest::Approx(2.5).epsilon(1e-12));
    }

    SUBCASE("requirement exactly on the full prefix saturates the residual") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0, 1.0}, pa);
        const SystemConfig cfg = test::unit_config(std::log2(6.0), 2); // theta = 5 = 4 + 1
        const auto alloc = optimal_powers(1.0, eff, pa, cfg);
        REQUIRE(alloc.has_value());
        CHECK(alloc->m_star == 2);
        CHECK(alloc->pa_power_sq[1] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("optimal powers satisfy structure, bounds and rate equality on random instances") {
    for (int k = 0; k < 40; ++k) {
        const auto inst = test::feasible_instance(6, 4, 40e6, 1000 + k);
        for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
            const auto& cfg = inst.scenario.system;
            const auto& pa = inst.scenario.pa;
            const double t_lo = min_duration(6, *eff, pa, cfg);
            const CounterRng rng(77, k);
            for (int i = 0; i < 25; ++i) {
                const double t = t_lo + (cfg.slot_s - t_lo) * rng.uniform01(i);
                const auto alloc = optimal_powers(t, *eff, pa, cfg);
                REQUIRE(alloc.has_value());

                const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;
                for (int r = 0; r + 1 < 6; ++r) {
                    CHECK(alloc->pa_power_sq[eff->order[r]] >=
                          alloc->pa_power_sq[eff->order[r + 1]] - 1e-9 * cap);
                }
                for (double x : alloc->pa_power_sq) {
                    CHECK(x >= 0.0);
                    CHECK(x <= cap * (1.0 + 1e-12));
                }
                const double theta = required_received_power(t, cfg);
                CHECK(received_power(alloc->pa_power_sq, *eff) ==
                      doctest::Approx(theta).epsilon(1e-9));
                const double rate = achieved_average_rate_bps(
                    t, received_power(alloc->pa_power_sq, *eff), cfg);
                CHECK(rate == doctest::Approx(cfg.target_rate_bps).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("active count is non-increasing in the duration") {
    const auto inst = test::feasible_instance(8, 4, 50e6, 31337);
    for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
        const auto& cfg = inst.scenario.system;
        const double t_lo = min_duration(8, *eff, inst.scenario.pa, cfg);
        int prev = 1 << 20;
        for (int i = 0; i <= 64; ++i) {
            const double t = t_lo + (cfg.slot_s - t_lo) * i / 64.0;
            const auto m = active_count(t, *eff, inst.scenario.pa, cfg);
            REQUIRE(m.has_value());
            CHECK(*m <= prev);
            prev = *m;
        }
    }
}

TEST_CASE("swap step repairs ordering violations") {
    const PaModel pa = test::unit_pa();

    SUBCASE("power parked on the weaker subarray moves over") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0, 1.0}, pa);
        PowerAllocation bad;
        bad.m_star = 1;
        bad.pa_power_sq = {0.0, 4.0};
        bad.power_w = bad.pa_power_sq;
        const double before = received_power(bad.pa_power_sq, eff);
        const auto fixed = swap_improves(bad, eff, pa);
        CHECK(fixed.pa_power_sq[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fixed.pa_power_sq[1] == doctest::Approx(0.0));
        CHECK(received_power(fixed.pa_power_sq, eff) == doctest::Approx(before).epsilon(1e-12));
        CHECK(pa_draw_sum(fixed.pa_power_sq) <= pa_draw_sum(bad.pa_power_sq) + 1e-15);
    }

    SUBCASE("equal gains exchange with no energy change") {
        const auto eff = test::make_channel(BeamformingMode::Coherent, {1.5, 1.5}, pa);
        PowerAllocation bad;
        bad.m_star = 2;
        bad.pa_power_sq = {0.2, 0.7};
        bad.power_w = bad.pa_power_sq;
        const auto fixed = swap_improves(bad, eff, pa);
        CHECK(fixed.pa_power_sq[0] == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(fixed.pa_power_sq[1] == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(pa_draw_sum(fixed.pa_power_sq) ==
              doctest::Approx(pa_draw_sum(bad.pa_power_sq)).epsilon(1e-12));
    }

    SUBCASE("ordered input is a fixed point") {
        const auto eff = test::make_channel(BeamformingMode::NonCoherent, {2.0, 1.0}, pa);
        PowerAllocation good;
        good.m_star = 2;
        good.pa_power_sq = {0.9, 0.3};
        good.power_w = good.pa_power_sq;
        const auto same = swap_improves(good, eff, pa);
        CHECK(same.pa_power_sq[0] == 0.9);
        CHECK(same.pa_power_sq[1] == 0.3);
    }
}

TEST_CASE("swap step never increases the PA draw on random violations") {
    const PaModel pa = test::unit_pa();
    const CounterRng rng(555, 0);
    for (int k = 0; k < 200; ++k) {
        const BeamformingMode mode =
            k % 2 ? BeamformingMode::Coherent : BeamformingMode::NonCoherent;
        std::vector<double> gains(4);
        for (int m = 0; m < 4; ++m) gains[m] = 0.2 + rng.uniform01(10 * k + m);
        const auto eff = test::make_channel(mode, gains, pa);

        PowerAllocation alloc;
        alloc.pa_power_sq.resize(4);
        alloc.power_w.resize(4);
        for (int m = 0; m < 4; ++m) alloc.pa_power_sq[m] = rng.uniform01(10 * k + 5 + m);
        const double before_power = received_power(alloc.pa_power_sq, eff);
        const double before_draw = pa_draw_sum(alloc.pa_power_sq);

        const auto fixed = swap_improves(alloc, eff, pa);
        CHECK(received_power(fixed.pa_power_sq, eff) ==
              doctest::Approx(before_power).epsilon(1e-9));
        CHECK(pa_draw_sum(fixed.pa_power_sq) <= before_draw + 1e-12);
        for (int r = 0; r + 1 < 4; ++r) {
            CHECK(fixed.pa_power_sq[eff.order[r]] >= fixed.pa_power_sq[eff.order[r + 1]] - 1e-12);
        }
    }
}

TEST_CASE("saturation structure dominates random rate-matched allocations") {
    const auto inst = test::feasible_instance(3, 4, 30e6, 2222);
    const auto& cfg = inst.scenario.system;
    const auto& pa = inst.scenario.pa;
    for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
        const double t_lo = min_duration(3, *eff, pa, cfg);
        const double t = t_lo + 0.5 * (cfg.slot_s - t_lo);
        const double theta = required_received_power(t, cfg);
        const auto alloc = optimal_powers(t, *eff, pa, cfg);
        REQUIRE(alloc.has_value());
        const double optimal_draw = pa_draw_sum(alloc->pa_power_sq);

        const CounterRng rng(4242, eff->mode == BeamformingMode::Coherent ? 1 : 0);
        int accepted = 0;
        for (std::uint64_t k = 0; accepted < 200 && k < 100000; ++k) {
            const auto sample = random_rate_matched(*eff, pa, theta, rng, 8 * k);
            if (!sample) continue;
            ++accepted;
            CHECK(optimal_draw <= pa_draw_sum(*sample) * (1.0 + 1e-12));
        }
        CHECK(accepted == 200);
    }
}

TEST_CASE("pumping power toward better-ranked subarrays never raises the PA draw") {
    const auto inst = test::feasible_instance(4, 4, 40e6, 909);
    const auto& cfg = inst.scenario.system;
    const auto& pa = inst.scenario.pa;
    const double cap = pa.p_max_subarray_w * pa.p_max_subarray_w;

    for (const auto* eff : {&inst.coherent, &inst.noncoherent}) {
        const double t_lo = min_duration(4, *eff, pa, cfg);
        const double theta = required_received_power(t_lo + 0.4 * (cfg.slot_s - t_lo), cfg);
        const CounterRng rng(31, eff->mode == BeamformingMode::Coherent ? 1 : 0);

        int tried = 0;
        for (std::uint64_t k = 0; tried < 100 && k < 100000; ++k) {
            auto sample = random_rate_matched(*eff, pa, theta, rng, 8 * k);
            if (!sample) continue;
            // Order the draw first so ranked prefixes make sense.
            PowerAllocation alloc;
            alloc.pa_power_sq = *sample;
            alloc.power_w = *sample;
            alloc = swap_improves(alloc, *eff, pa);

            // Find a donor pair: a non-saturated better rank and a positive
            // worse rank.
            int better = -1, worse = -1;
            for (int r = 0; r < 4; ++r) {
                const double x = alloc.pa_power_sq[eff->order[r]];
                if (better < 0 && x < cap * 0.999 && eff->eff_gain[eff->order[r]] > 0.0) better = r;
            }
            for (int r = 3; r >= 0; --r) {
                if (alloc.pa_power_sq[eff->order[r]] > 1e-12) {
                    worse = r;
                    break;
                }
            }
            if (better < 0 || worse <= better) continue;
            ++tried;

            const int b_idx = eff->order[better];
            const int w_idx = eff->order[worse];
            const double g_b = eff->eff_gain[b_idx];
            const double g_w = eff->eff_gain[w_idx];
            const double x_b = alloc.pa_power_sq[b_idx];
            const double x_w = alloc.pa_power_sq[w_idx];

            auto pumped = alloc.pa_power_sq;
            if (eff->mode == BeamformingMode::NonCoherent) {
                const double alpha =
                    std::min(cap - x_b, x_w * g_w * g_w / (g_b * g_b)) * rng.uniform01(8 * k + 7);
                pumped[b_idx] = x_b + alpha;
                pumped[w_idx] = x_w - alpha * g_b * g_b / (g_w * g_w);
            } else {
                const double max_alpha =
                    std::min(cap - x_b,
                             std::pow(std::sqrt(x_b) + std::sqrt(x_w) * g_w / g_b, 2.0) - x_b);
                const double alpha = max_alpha * rng.uniform01(8 * k + 7);
                const double amp_gain = (std::sqrt(x_b + alpha) - std::sqrt(x_b)) * g_b;
                const double amp_w = std::sqrt(x_w) * g_w - amp_gain;
                pumped[b_idx] = x_b + alpha;
                pumped[w_idx] = amp_w * amp_w / (g_w * g_w);
            }

            CHECK(received_power(pumped, *eff) ==
                  doctest::Approx(received_power(alloc.pa_power_sq, *eff)).epsilon(1e-9));
            CHECK(pa_draw_sum(pumped) <= pa_draw_sum(alloc.pa_power_sq) + 1e-12);
        }
        CHECK(tried == 100);
    }
}
