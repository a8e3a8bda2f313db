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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hybridee/baselines.hpp"
#include "hybridee/channel.hpp"
#include "hybridee/types.hpp"

namespace hybridee {

/// Everything the solvers need for one scenario point.
struct Scenario {
    SystemConfig system;
    PaModel pa;
    CircuitModel circuit;
    PathLossModel pathloss;
};

enum class SweptParameter {
    TargetRate,
    NumSubarrays,
    AntennasPerSubarray,
    PMax,
    EtaMax,
    Epsilon,
    PBase,
    SlotDuration,
    Distance,
};

/// Config-file name of a swept parameter and the unit its sweep values are
/// written in (values are converted to SI on load).
const char* to_string(SweptParameter p);
const char* config_unit(SweptParameter p);
double parameter_to_si(SweptParameter p, double config_value);
double parameter_from_si(SweptParameter p, double value_si);

struct SweepSpec {
    SweptParameter parameter = SweptParameter::TargetRate;
    std::vector<double> values; // SI units
    int trials = 200;
    std::uint64_t seed = 1;
    std::vector<BeamformingMode> modes{BeamformingMode::Coherent, BeamformingMode::NonCoherent};
    std::vector<SchemeId> schemes{SchemeId::Proposed, SchemeId::Fixed,
                                  SchemeId::UniformDuration, SchemeId::WaterFilling};
    /// When set (slot-duration sweeps), the rate target per point is
    /// total_bits / slot so every slot carries the same payload.
    std::optional<double> fixed_total_bits;
    int workers = 0; // 0 = hardware concurrency

    void validate() const;
};

/// One (mode, scheme, swept value, trial) outcome. Infeasible trials keep
/// zeroed numeric fields and an empty power list.
struct ResultRow {
    BeamformingMode mode = BeamformingMode::Coherent;
    SchemeId scheme = SchemeId::Proposed;
    double value = 0.0;
    int trial = 0;
    double t_star_s = 0.0;
    int m_star = 0;
    double energy_j = 0.0;
    double ee_bit_per_j = 0.0;
    bool feasible = false;
    std::vector<double> powers_w;

    bool operator==(const ResultRow&) const = default;
};

/// Applies one swept value to a base scenario.
Scenario apply_parameter(Scenario base, SweptParameter parameter, double value_si,
                         const std::optional<double>& fixed_total_bits = std::nullopt);

/// Runs every (mode, scheme, value, trial) combination. All schemes and
/// modes of a given (value, trial) share one channel realization keyed by
/// (seed, trial), so comparisons are paired; output order and content are
/// deterministic regardless of worker count.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, const Scenario& base);

/// Per (mode, scheme, value) means over feasible trials with 95% normal
/// confidence half-widths. Single-sample groups report zero half-widths
/// and set degenerate_ci.
struct SummaryRow {
    BeamformingMode mode = BeamformingMode::Coherent;
    SchemeId scheme = SchemeId::Proposed;
    double value = 0.0;
    int trials_used = 0;
    int trials_excluded = 0;
    double ee_mean = 0.0;
    double ee_ci95 = 0.0;
    double t_star_mean_s = 0.0;
    double t_star_ci95_s = 0.0;
    double m_star_mean = 0.0;
    double m_star_ci95 = 0.0;
    bool degenerate_ci = false;
};

std::vector<SummaryRow> summarize(std::span<const ResultRow> rows);

}  // namespace hybridee
