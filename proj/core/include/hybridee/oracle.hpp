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

#include <string>
#include <vector>

#include "hybridee/types.hpp"

namespace hybridee {

/// Resolution of the exhaustive search. The rate constraint is accepted
/// within a relative slack band around equality, since exact equality is
/// measure-zero on a grid.
struct OracleGrid {
    int duration_points = 2000;
    int power_points = 400;
    double rate_slack = 1e-3;
};

/// Exhaustive reference optimizer for instances with at most 3 subarrays:
/// a duration grid over the feasible range and, per duration, a full grid
/// over per-subarray squared PA powers with no structural assumptions.
AllocationSolution brute_force_solve(const EffectiveChannel& eff, const PaModel& pa,
                                     const CircuitModel& circuit, const SystemConfig& cfg,
                                     const OracleGrid& grid = {});

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;
};

/// Re-checks a feasible solution independently of how it was produced:
/// rate equality, power caps, ranked power ordering, duration bounds and
/// energy bookkeeping.
VerificationReport verify_solution(const AllocationSolution& sol, const EffectiveChannel& eff,
                                   const PaModel& pa, const CircuitModel& circuit,
                                   const SystemConfig& cfg);

}  // namespace hybridee
