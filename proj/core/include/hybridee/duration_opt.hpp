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

#include <functional>
#include <optional>
#include <vector>

#include "hybridee/golden_section.hpp"
#include "hybridee/power_structure.hpp"
#include "hybridee/types.hpp"

namespace hybridee {

// The feasible duration range [t_min(M), T] splits into intervals on which
// the optimal active-subarray count is constant. Within each interval the
// slot energy at the optimal powers is a scalar function of t with a single
// curvature class (or a root-subdivided mixture), so the global optimum is
// found from interval boundaries and convex interior searches.

enum class Curvature { Convex, Concave, Mixed };

/// One feasible-duration interval. `hi_inclusive` marks the interval that
/// ends at the slot boundary T; all others are right-open, their upper end
/// being the next interval's lower end.
struct Segment {
    int active_count = 0;
    double lo_s = 0.0;
    double hi_s = 0.0;
    bool hi_inclusive = false;
};

struct SegmentCurvature {
    Curvature kind = Curvature::Convex;
    std::vector<double> roots_s; // curvature sign changes, Mixed only
};

/// Slot energy as a function of the transmit duration, evaluated at the
/// energy-optimal powers for that duration. Includes every term of the slot
/// account (PA, static, rate-dependent and idle circuit energy) so values
/// are comparable across segments with different active counts.
class SegmentObjective {
public:
    SegmentObjective(const EffectiveChannel& eff, const PaModel& pa,
                     const CircuitModel& circuit, const SystemConfig& cfg);

    double operator()(double t_s) const;

    const EffectiveChannel& channel() const { return *eff_; }
    const PaModel& pa() const { return *pa_; }
    const CircuitModel& circuit() const { return *circuit_; }
    const SystemConfig& config() const { return *cfg_; }

private:
    const EffectiveChannel* eff_;
    const PaModel* pa_;
    const CircuitModel* circuit_;
    const SystemConfig* cfg_;
};

/// Shortest duration meeting the rate target with the best `active`
/// subarrays at full drive. Strictly decreasing in `active` for distinct
/// gains; +inf when those subarrays have zero gain.
double min_duration(int active, const EffectiveChannel& eff, const PaModel& pa,
                    const SystemConfig& cfg);

/// Feasible-duration partition, ordered by increasing lower end (decreasing
/// active count). nullopt when the rate target is unreachable within the
/// slot even with every subarray at full drive.
std::optional<std::vector<Segment>> build_segments(const EffectiveChannel& eff,
                                                   const PaModel& pa,
                                                   const SystemConfig& cfg);

/// Curvature of the segment objective. Analytic when the rate-to-bandwidth
/// ratio is >= 1 and the circuit model is linear (coherent and
/// single-subarray segments convex, other non-coherent segments concave);
/// otherwise classified by a scanned second difference with sign-change
/// roots located by bisection.
SegmentCurvature classify_curvature(const Segment& seg, const SegmentObjective& obj,
                                    int scan_points = 256);

/// Minimum of a classified segment: better endpoint for concave segments
/// (right-open ends evaluated one tolerance step inside), golden-section
/// for convex ones, and the per-piece best across curvature roots for
/// mixed ones.
ScalarMinimum minimize_segment(const Segment& seg, const SegmentCurvature& curvature,
                               const std::function<double(double)>& objective,
                               double duration_tol_s);

/// Global optimum over all segments; powers from the saturation structure
/// at the winning duration. Infeasible problems return feasible = false.
AllocationSolution solve_noncoherent(const EffectiveChannel& eff, const PaModel& pa,
                                     const CircuitModel& circuit, const SystemConfig& cfg);
AllocationSolution solve_coherent(const EffectiveChannel& eff, const PaModel& pa,
                                  const CircuitModel& circuit, const SystemConfig& cfg);
AllocationSolution solve(const EffectiveChannel& eff, const PaModel& pa,
                         const CircuitModel& circuit, const SystemConfig& cfg);

namespace detail {

/// Second-difference curvature scan used by the non-analytic path; exposed
/// for direct testing. `scale_time_s` sets the zero threshold scale.
SegmentCurvature scan_curvature(const std::function<double(double)>& f, double lo,
                                double hi, int points, double scale_time_s);

}  // namespace detail

}  // namespace hybridee
