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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hybridee/channel.hpp"
#include "hybridee/config_io.hpp"
#include "hybridee/oracle.hpp"
#include "hybridee/outputs.hpp"
#include "hybridee/rng.hpp"
#include "hybridee/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitOracleViolation = 4;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string mode;
    std::string schemes;
    std::string out_dir;
    std::string format = "both";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "Config file (key=value text)");
    cmd->add_option("--seed", opt.seed, "Random seed");
    cmd->add_option("--trials", opt.trials, "Channel realizations per point");
    cmd->add_option("--mode", opt.mode, "coherent|noncoherent|both");
    cmd->add_option("--scheme", opt.schemes,
                    "Comma list of proposed|fixed|uniform-duration|water-filling, or all");
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_option("--format", opt.format, "csv|svg|both")
        ->check(CLI::IsMember({"csv", "svg", "both"}));
}

hybridee::LoadedConfig load(const CommonOptions& opt) {
    hybridee::LoadedConfig cfg = opt.config_path.empty()
                                     ? hybridee::default_config()
                                     : hybridee::load_config_file(opt.config_path);
    if (opt.seed) cfg.sweep.seed = *opt.seed;
    if (opt.trials) {
        if (*opt.trials < 1) throw hybridee::ConfigError("--trials", "must be >= 1");
        cfg.sweep.trials = *opt.trials;
    }
    if (!opt.mode.empty()) {
        if (opt.mode == "both") {
            cfg.sweep.modes = {hybridee::BeamformingMode::Coherent,
                               hybridee::BeamformingMode::NonCoherent};
        } else {
            cfg.sweep.modes = {hybridee::parse_beamforming_mode(opt.mode)};
        }
    }
    if (!opt.schemes.empty()) {
        cfg.sweep.schemes.clear();
        std::istringstream is(opt.schemes);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok == "all") {
                cfg.sweep.schemes = {
                    hybridee::SchemeId::Proposed, hybridee::SchemeId::Fixed,
                    hybridee::SchemeId::UniformDuration, hybridee::SchemeId::WaterFilling};
                break;
            }
            if (!tok.empty()) cfg.sweep.schemes.push_back(hybridee::parse_scheme_id(tok));
        }
        if (cfg.sweep.schemes.empty()) throw hybridee::ConfigError("--scheme", "empty list");
    }
    return cfg;
}

hybridee::EmitOptions emit_options(const std::string& format) {
    hybridee::EmitOptions options;
    options.csv = format != "svg";
    options.svg = format != "csv";
    return options;
}

std::string engineering(double value, const char* unit) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g %s", value, unit);
    return buf;
}

void print_solution(const hybridee::AllocationSolution& sol, hybridee::BeamformingMode mode,
                    const hybridee::SystemConfig& cfg) {
    std::printf("mode: %s\n", hybridee::to_string(mode));
    if (!sol.feasible) {
        std::printf("  %-22s %s\n", "feasible", "no (rate unreachable within the slot)");
        return;
    }
    std::printf("  %-22s %s\n", "feasible", "yes");
    std::printf("  %-22s %.6g ms of %.6g ms slot\n", "transmit duration", sol.t_star_s * 1e3,
                cfg.slot_s * 1e3);
    std::printf("  %-22s %d of %d\n", "active subarrays", sol.m_star, cfg.num_subarrays);
    std::printf("  %-22s %s\n", "total energy", engineering(sol.energy.total_j, "J").c_str());
    std::printf("  %-22s pa %.6g  static %.6g  dynamic %.6g  idle %.6g\n", "energy parts [J]",
                sol.energy.pa_j, sol.energy.static_circuit_j, sol.energy.dynamic_circuit_j,
                sol.energy.idle_j);
    std::printf("  %-22s %s\n", "energy efficiency",
                engineering(sol.ee_bit_per_j, "bit/J").c_str());
    std::printf("  %-22s", "powers [W]");
    for (double p : sol.powers_w) std::printf(" %.6g", p);
    std::printf("\n");
}

int run_solve(const CommonOptions& opt, std::uint64_t trial, const std::string& dump_path) {
    const auto cfg = load(opt);
    const auto& s = cfg.scenario;
    const auto realization =
        hybridee::sample_channels(s.system, s.pathloss, cfg.sweep.seed, trial);

    if (!dump_path.empty()) {
        std::ofstream os(dump_path, std::ios::binary);
        if (!os) throw hybridee::ConfigError("--dump-channels", "cannot open '" + dump_path + "'");
        hybridee::write_channel_dump(os, {&realization, 1});
    }

    std::vector<hybridee::ResultRow> rows;
    bool any_infeasible = false;
    for (auto mode : cfg.sweep.modes) {
        hybridee::SystemConfig sys = s.system;
        sys.mode = mode;
        const auto eff = hybridee::effective_gains(realization, s.pa, mode);
        const auto sol = hybridee::solve(eff, s.pa, s.circuit, sys);
        print_solution(sol, mode, sys);
        any_infeasible = any_infeasible || !sol.feasible;

        hybridee::ResultRow row;
        row.mode = mode;
        row.scheme = hybridee::SchemeId::Proposed;
        row.value = sys.target_rate_bps;
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

    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        std::ofstream os(std::filesystem::path(opt.out_dir) / "solve.csv", std::ios::binary);
        hybridee::write_results_csv(os, rows);
    }
    return any_infeasible ? kExitInfeasible : kExitOk;
}

int run_sweep_cmd(const CommonOptions& opt) {
    const auto cfg = load(opt);
    const auto rows = hybridee::run_sweep(cfg.sweep, cfg.scenario);
    const auto summaries = hybridee::summarize(rows);
    const std::string out_dir = opt.out_dir.empty() ? "out" : opt.out_dir;
    const auto written = hybridee::emit_outputs(rows, summaries, out_dir, cfg.sweep.parameter,
                                                emit_options(opt.format));
    std::printf("sweep: %zu rows over %zu points (%s)\n", rows.size(), cfg.sweep.values.size(),
                hybridee::to_string(cfg.sweep.parameter));
    for (const auto& path : written) std::printf("wrote %s\n", path.string().c_str());
    return kExitOk;
}

int run_oracle_check(const CommonOptions& opt, int instances) {
    auto cfg = load(opt);
    // Small instances keep the exhaustive reference tractable.
    cfg.scenario.system.num_subarrays = 2;
    cfg.scenario.system.antennas_per_subarray = 4;

    const hybridee::CounterRng rng(cfg.sweep.seed, 0xACCE55);
    constexpr double kTolerance = 1.005;
    bool violated = false;
    std::uint64_t trial = 0;
    for (int i = 0; i < instances; ++i) {
        auto scenario = cfg.scenario;
        scenario.system.target_rate_bps = (10.0 + 70.0 * rng.uniform01(i)) * 1e6;

        // Resample until the rate is reachable in both modes.
        hybridee::ChannelRealization realization;
        hybridee::EffectiveChannel non;
        for (;; ++trial) {
            realization = hybridee::sample_channels(scenario.system, scenario.pathloss,
                                                    cfg.sweep.seed, trial);
            non = hybridee::effective_gains(realization, scenario.pa,
                                            hybridee::BeamformingMode::NonCoherent);
            if (hybridee::min_duration(2, non, scenario.pa, scenario.system) <=
                scenario.system.slot_s) {
                ++trial;
                break;
            }
        }

        for (auto mode :
             {hybridee::BeamformingMode::Coherent, hybridee::BeamformingMode::NonCoherent}) {
            hybridee::SystemConfig sys = scenario.system;
            sys.mode = mode;
            const auto eff = mode == hybridee::BeamformingMode::NonCoherent
                                 ? non
                                 : hybridee::effective_gains(realization, scenario.pa, mode);
            const auto sol = hybridee::solve(eff, scenario.pa, scenario.circuit, sys);
            const auto ref = hybridee::brute_force_solve(eff, scenario.pa, scenario.circuit, sys);
            if (!sol.feasible || !ref.feasible) {
                std::printf("instance %3d %-11s infeasible (solver %d, reference %d)\n", i,
                            hybridee::to_string(mode), sol.feasible, ref.feasible);
                violated = true;
                continue;
            }
            const double ratio = sol.energy.total_j / ref.energy.total_j;
            const bool ok = ratio <= kTolerance;
            std::printf("instance %3d %-11s rate %5.1f Mbps solver/reference %.6f %s\n", i,
                        hybridee::to_string(mode), sys.target_rate_bps / 1e6, ratio,
                        ok ? "ok" : "VIOLATION");
            violated = violated || !ok;
        }
    }
    return violated ? kExitOracleViolation : kExitOk;
}

int run_replay(const CommonOptions& opt, const std::string& channels_path) {
    const auto cfg = load(opt);
    std::ifstream is(channels_path);
    if (!is) throw hybridee::ConfigError("--channels", "cannot open '" + channels_path + "'");
    const auto realizations = hybridee::read_channel_dump(is);
    if (realizations.empty()) throw hybridee::ConfigError("--channels", "no realizations found");

    std::vector<hybridee::ResultRow> rows;
    for (auto mode : cfg.sweep.modes) {
        for (auto scheme : cfg.sweep.schemes) {
            for (std::size_t trial = 0; trial < realizations.size(); ++trial) {
                hybridee::SystemConfig sys = cfg.scenario.system;
                sys.mode = mode;
                sys.num_subarrays = realizations[trial].num_subarrays;
                sys.antennas_per_subarray = realizations[trial].antennas_per_subarray;
                const auto eff =
                    hybridee::effective_gains(realizations[trial], cfg.scenario.pa, mode);
                const auto sol =
                    hybridee::run_scheme(scheme, eff, cfg.scenario.pa, cfg.scenario.circuit, sys);

                hybridee::ResultRow row;
                row.mode = mode;
                row.scheme = scheme;
                row.value = static_cast<double>(trial);
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

    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        std::ofstream os(std::filesystem::path(opt.out_dir) / "results.csv", std::ios::binary);
        hybridee::write_results_csv(os, rows);
        std::printf("wrote %s\n",
                    (std::filesystem::path(opt.out_dir) / "results.csv").string().c_str());
    } else {
        hybridee::write_results_csv(std::cout, rows);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-efficient transmit planning for hybrid antenna arrays"};
    app.require_subcommand(1);

    CommonOptions solve_opt, sweep_opt, oracle_opt, replay_opt;
    std::uint64_t solve_trial = 0;
    std::string dump_path;
    int oracle_instances = 50;
    std::string channels_path;

    auto* solve_cmd = app.add_subcommand("solve", "Solve one channel realization");
    add_common(solve_cmd, solve_opt);
    solve_cmd->add_option("--trial", solve_trial, "Realization index");
    solve_cmd->add_option("--dump-channels", dump_path, "Write the realization as CSV");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run the configured Monte Carlo sweep");
    add_common(sweep_cmd, sweep_opt);

    auto* oracle_cmd =
        app.add_subcommand("oracle-check", "Compare the solver against the exhaustive reference");
    add_common(oracle_cmd, oracle_opt);
    oracle_cmd->add_option("--instances", oracle_instances, "Number of random instances")
        ->check(CLI::PositiveNumber);

    auto* replay_cmd = app.add_subcommand("replay", "Solve realizations from a channel dump");
    add_common(replay_cmd, replay_opt);
    replay_cmd->add_option("--channels", channels_path, "Channel dump CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(solve_opt, solve_trial, dump_path);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_opt);
        if (oracle_cmd->parsed()) return run_oracle_check(oracle_opt, oracle_instances);
        if (replay_cmd->parsed()) return run_replay(replay_opt, channels_path);
    } catch (const hybridee::ConfigError& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitConfig;
    } catch (const std::invalid_argument& err) {
        std::fprintf(stderr, "error: invalid configuration: %s\n", err.what());
        return kExitConfig;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return kExitOk;
}
