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

#include "hybridee/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace hybridee {

namespace {

constexpr double kZ95 = 1.959963984540054;

int as_count(double v, const char* what) {
    const int n = static_cast<int>(std::lround(v));
    detail::require(n >= 1 && std::abs(v - n) < 1e-9, what);
    return n;
}

struct MeanCi {
    double mean = 0.0;
    double ci = 0.0;
};

MeanCi mean_ci(const std::vector<double>& xs) {
    MeanCi out;
    const std::size_t n = xs.size();
    if (n == 0) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / n;
    if (n >= 2) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.ci = kZ95 * std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
    }
    return out;
}

}  // namespace

const char* to_string(SweptParameter p) {
    switch (p) {
        case SweptParameter::TargetRate: return "r_dl";
        case SweptParameter::NumSubarrays: return "M";
        case SweptParameter::AntennasPerSubarray: return "K";
        case SweptParameter::PMax: return "P_max";
        case SweptParameter::EtaMax: return "eta_max";
        case SweptParameter::Epsilon: return "epsilon";
        case SweptParameter::PBase: return "P_base";
        case SweptParameter::SlotDuration: return "T";
        case SweptParameter::Distance: return "distance";
    }
    return "?";
}

const char* config_unit(SweptParameter p) {
    switch (p) {
        case SweptParameter::TargetRate: return "Mbit/s";
        case SweptParameter::NumSubarrays: return "subarrays";
        case SweptParameter::AntennasPerSubarray: return "antennas";
        case SweptParameter::PMax: return "dBm";
        case SweptParameter::EtaMax: return "";
        case SweptParameter::Epsilon: return "mW/Mbps";
        case SweptParameter::PBase: return "mW";
        case SweptParameter::SlotDuration: return "ms";
        case SweptParameter::Distance: return "m";
    }
    return "";
}

double parameter_to_si(SweptParameter p, double config_value) {
    switch (p) {
        case SweptParameter::TargetRate: return config_value * 1e6;
        case SweptParameter::PMax: return std::pow(10.0, config_value / 10.0) * 1e-3;
        case SweptParameter::Epsilon: return config_value * 1e-9;
        case SweptParameter::PBase: return config_value * 1e-3;
        case SweptParameter::SlotDuration: return config_value * 1e-3;
        default: return config_value;
    }
}

double parameter_from_si(SweptParameter p, double value_si) {
    switch (p) {
        case SweptParameter::TargetRate: return value_si * 1e-6;
        case SweptParameter::PMax: return 10.0 * std::log10(value_si * 1e3);
        case SweptParameter::Epsilon: return value_si * 1e9;
        case SweptParameter::PBase: return value_si * 1e3;
        case SweptParameter::SlotDuration: return value_si * 1e3;
        default: return value_si;
    }
}

void SweepSpec::validate() const {
    detail::require(!values.empty(), "SweepSpec.values must be non-empty");
    if (values.size() >= 2) {
        const bool increasing = values[1] > values[0];
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            detail::require(increasing ? values[i + 1] > values[i] : values[i + 1] < values[i],
                            "SweepSpec.values must be strictly monotone");
        }
    }
    detail::require(trials >= 1, "SweepSpec.trials must be >= 1");
    detail::require(!modes.empty(), "SweepSpec.modes must be non-empty");
    detail::require(!schemes.empty(), "SweepSpec.schemes must be non-empty");
    detail::require(!fixed_total_bits || *fixed_total_bits > 0.0,
                    "SweepSpec.fixed_total_bits must be > 0");
    detail::require(workers >= 0, "SweepSpec.workers must be >= 0");
}

Scenario apply_parameter(Scenario base, SweptParameter parameter, double value_si,
                         const std::optional<double>& fixed_total_bits) {
    switch (parameter) {
        case SweptParameter::TargetRate:
            base.system.target_rate_bps = value_si;
            break;
        case SweptParameter::NumSubarrays:
            base.system.num_subarrays = as_count(value_si, "sweep value for M must be a positive integer");
            break;
        case SweptParameter::AntennasPerSubarray:
            base.system.antennas_per_subarray =
                as_count(value_si, "sweep value for K must be a positive integer");
            break;
        case SweptParameter::PMax:
            base.pa.p_max_subarray_w = value_si;
            break;
        case SweptParameter::EtaMax:
            base.pa.eta_max = value_si;
            break;
        case SweptParameter::Epsilon:
            base.circuit.epsilon_j_per_bit = value_si;
            break;
        case SweptParameter::PBase:
            base.circuit.p_base_w = value_si;
            break;
        case SweptParameter::SlotDuration:
            base.system.slot_s = value_si;
            break;
        case SweptParameter::Distance:
            base.pathloss.distance_m = value_si;
            break;
    }
    if (fixed_total_bits) {
        base.system.target_rate_bps = *fixed_total_bits / base.system.slot_s;
    }
    base.system.validate();
    base.pa.validate();
    base.circuit.validate();
    base.pathloss.validate();
    return base;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const Scenario& base) {
    spec.validate();
    base.system.validate();
    base.pa.validate();
    base.circuit.validate();
    base.pathloss.validate();

    const std::size_t n_values = spec.values.size();
    const std::size_t n_trials = static_cast<std::size_t>(spec.trials);
    const std::size_t n_tasks = n_values * n_trials;

    // One task per (value, trial); every mode and scheme of the task reuses
    // the same realization so comparisons are paired.
    std::vector<std::vector<AllocationSolution>> task_solutions(n_tasks);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto run_task = [&](std::size_t task) {
        const std::size_t value_idx = task / n_trials;
        const std::size_t trial = task % n_trials;
        const Scenario point =
            apply_parameter(base, spec.parameter, spec.values[value_idx], spec.fixed_total_bits);
        const ChannelRealization real =
            sample_channels(point.system, point.pathloss, spec.seed, trial);

        auto& out = task_solutions[task];
        out.reserve(spec.modes.size() * spec.schemes.size());
        for (BeamformingMode mode : spec.modes) {
            SystemConfig cfg = point.system;
            cfg.mode = mode;
            const EffectiveChannel eff = effective_gains(real, point.pa, mode);
            for (SchemeId scheme : spec.schemes) {
                out.push_back(run_scheme(scheme, eff, point.pa, point.circuit, cfg));
            }
        }
    };

    unsigned n_workers = spec.workers > 0 ? static_cast<unsigned>(spec.workers)
                                          : std::thread::hardware_concurrency();
    n_workers = std::max(1u, std::min<unsigned>(n_workers, n_tasks));

    if (n_workers <= 1) {
        for (std::size_t task = 0; task < n_tasks; ++task) run_task(task);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t task = next.fetch_add(1); task < n_tasks;
                     task = next.fetch_add(1)) {
                    try {
                        run_task(task);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::vector<ResultRow> rows;
    rows.reserve(n_tasks * spec.modes.size() * spec.schemes.size());
    for (std::size_t mode_idx = 0; mode_idx < spec.modes.size(); ++mode_idx) {
        for (std::size_t scheme_idx = 0; scheme_idx < spec.schemes.size(); ++scheme_idx) {
            for (std::size_t value_idx = 0; value_idx < n_values; ++value_idx) {
                for (std::size_t trial = 0; trial < n_trials; ++trial) {
                    const auto& sol = task_solutions[value_idx * n_trials + trial]
                                                    [mode_idx * spec.schemes.size() + scheme_idx];
                    ResultRow row;
                    row.mode = spec.modes[mode_idx];
                    row.scheme = spec.schemes[scheme_idx];
                    row.value = spec.values[value_idx];
                    row.trial = static_cast<int>(trial);
                    row.feasible = sol.feasible;
                    if (sol.feasible) {
                        row.t_star_s = sol.t_star_s;
                        row.m_star = sol.m_star;
                        row.energy_j = sol.energy.total_j;
                        row.ee_bit_per_j = sol.ee_bit_per_j;
                        row.powers_w = sol.powers_w;
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

std::vector<SummaryRow> summarize(std::span<const ResultRow> rows) {
    std::vector<SummaryRow> out;
    std::size_t i = 0;
    while (i < rows.size()) {
        const auto& head = rows[i];
        std::vector<double> ee, t_star, m_star;
        int excluded = 0;
        std::size_t j = i;
        for (; j < rows.size(); ++j) {
            const auto& r = rows[j];
            if (r.mode != head.mode || r.scheme != head.scheme || r.value != head.value) break;
            if (r.feasible) {
                ee.push_back(r.ee_bit_per_j);
                t_star.push_back(r.t_star_s);
                m_star.push_back(static_cast<double>(r.m_star));
            } else {
                ++excluded;
            }
        }

        SummaryRow s;
        s.mode = head.mode;
        s.scheme = head.scheme;
        s.value = head.value;
        s.trials_used = static_cast<int>(ee.size());
        s.trials_excluded = excluded;
        const auto ee_stat = mean_ci(ee);
        const auto t_stat = mean_ci(t_star);
        const auto m_stat = mean_ci(m_star);
        s.ee_mean = ee_stat.mean;
        s.ee_ci95 = ee_stat.ci;
        s.t_star_mean_s = t_stat.mean;
        s.t_star_ci95_s = t_stat.ci;
        s.m_star_mean = m_stat.mean;
        s.m_star_ci95 = m_stat.ci;
        s.degenerate_ci = ee.size() < 2;
        out.push_back(s);
        i = j;
    }
    return out;
}

}  // namespace hybridee
