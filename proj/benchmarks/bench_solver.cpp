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

#include <benchmark/benchmark.h>

#include "hybridee/baselines.hpp"
#include "hybridee/channel.hpp"
#include "hybridee/config_io.hpp"
#include "hybridee/oracle.hpp"

namespace {

using namespace hybridee;

struct Fixture {
    Scenario scenario;
    EffectiveChannel coherent;
    EffectiveChannel noncoherent;
};

Fixture make_fixture(int subarrays, double rate_bps) {
    Fixture f;
    f.scenario = default_scenario();
    f.scenario.system.num_subarrays = subarrays;
    f.scenario.system.antennas_per_subarray = 16;
    f.scenario.system.target_rate_bps = rate_bps;
    for (std::uint64_t trial = 0;; ++trial) {
        const auto real =
            sample_channels(f.scenario.system, f.scenario.pathloss, 7, trial);
        f.noncoherent = effective_gains(real, f.scenario.pa, BeamformingMode::NonCoherent);
        if (min_duration(subarrays, f.noncoherent, f.scenario.pa, f.scenario.system) <=
            f.scenario.system.slot_s) {
            f.coherent = effective_gains(real, f.scenario.pa, BeamformingMode::Coherent);
            break;
        }
    }
    return f;
}

void BM_SolveCoherent(benchmark::State& state) {
    const auto f = make_fixture(static_cast<int>(state.range(0)), 60e6);
    SystemConfig cfg = f.scenario.system;
    cfg.mode = BeamformingMode::Coherent;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(f.coherent, f.scenario.pa, f.scenario.circuit, cfg));
    }
}
BENCHMARK(BM_SolveCoherent)->Arg(4)->Arg(16)->Arg(64);

void BM_SolveNonCoherent(benchmark::State& state) {
    const auto f = make_fixture(static_cast<int>(state.range(0)), 60e6);
    SystemConfig cfg = f.scenario.system;
    cfg.mode = BeamformingMode::NonCoherent;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(f.noncoherent, f.scenario.pa, f.scenario.circuit, cfg));
    }
}
BENCHMARK(BM_SolveNonCoherent)->Arg(4)->Arg(16)->Arg(64);

void BM_WaterFilling(benchmark::State& state) {
    const auto f = make_fixture(16, 60e6);
    SystemConfig cfg = f.scenario.system;
    cfg.mode = BeamformingMode::Coherent;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            water_filling_scheme(f.coherent, f.scenario.pa, f.scenario.circuit, cfg));
    }
}
BENCHMARK(BM_WaterFilling);

void BM_RequiredReceivedPower(benchmark::State& state) {
    const SystemConfig cfg = default_scenario().system;
    double t = 0.2 * cfg.slot_s;
    for (auto _ : state) {
        benchmark::DoNotOptimize(required_received_power(t, cfg));
        t = t >= cfg.slot_s ? 0.2 * cfg.slot_s : t + 1e-9;
    }
}
BENCHMARK(BM_RequiredReceivedPower);

void BM_EffectiveGains(benchmark::State& state) {
    const Scenario s = default_scenario();
    const auto real = sample_channels(s.system, s.pathloss, 7, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(effective_gains(real, s.pa, BeamformingMode::Coherent));
    }
}
BENCHMARK(BM_EffectiveGains);

void BM_BruteForceOracle(benchmark::State& state) {
    auto f = make_fixture(2, 40e6);
    OracleGrid grid;
    grid.duration_points = 200;
    grid.power_points = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_solve(f.noncoherent, f.scenario.pa,
                                                   f.scenario.circuit, f.scenario.system, grid));
    }
}
BENCHMARK(BM_BruteForceOracle);

}  // namespace

BENCHMARK_MAIN();
