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

#include "hybridee/config_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace hybridee {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (trim(value.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key, "expected a number, got '" + value + "'");
}

long parse_integer(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    const long n = std::lround(v);
    if (std::abs(v - n) > 1e-9) throw ConfigError(key, "expected an integer, got '" + value + "'");
    return n;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::istringstream is(value);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) items.push_back(tok);
    }
    return items;
}

}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt * 1e3); }

BeamformingMode parse_beamforming_mode(const std::string& name) {
    if (name == "coherent") return BeamformingMode::Coherent;
    if (name == "noncoherent" || name == "non-coherent") return BeamformingMode::NonCoherent;
    throw ConfigError("mode", "unknown beamforming mode '" + name + "'");
}

SchemeId parse_scheme_id(const std::string& name) {
    if (name == "proposed") return SchemeId::Proposed;
    if (name == "fixed") return SchemeId::Fixed;
    if (name == "uniform-duration") return SchemeId::UniformDuration;
    if (name == "water-filling") return SchemeId::WaterFilling;
    throw ConfigError("schemes", "unknown scheme '" + name + "'");
}

SweptParameter parse_swept_parameter(const std::string& name) {
    for (SweptParameter p :
         {SweptParameter::TargetRate, SweptParameter::NumSubarrays,
          SweptParameter::AntennasPerSubarray, SweptParameter::PMax, SweptParameter::EtaMax,
          SweptParameter::Epsilon, SweptParameter::PBase, SweptParameter::SlotDuration,
          SweptParameter::Distance}) {
        if (name == to_string(p)) return p;
    }
    throw ConfigError("sweep_parameter", "unknown parameter '" + name + "'");
}

Scenario default_scenario() { return {}; }

LoadedConfig default_config() {
    LoadedConfig cfg;
    cfg.sweep.parameter = SweptParameter::TargetRate;
    for (double mbps : {20.0, 40.0, 60.0, 80.0, 100.0}) {
        cfg.sweep.values.push_back(mbps * 1e6);
    }
    return cfg;
}

LoadedConfig parse_config(std::istream& is) {
    LoadedConfig cfg = default_config();
    bool saw_values = false;
    std::vector<double> raw_values;

    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");

        auto& sys = cfg.scenario.system;
        auto& pa = cfg.scenario.pa;
        auto& circuit = cfg.scenario.circuit;
        auto& pl = cfg.scenario.pathloss;

        if (key == "bandwidth_hz") {
            sys.bandwidth_hz = parse_number(key, value);
        } else if (key == "slot_ms") {
            sys.slot_s = parse_number(key, value) * 1e-3;
        } else if (key == "n0_dbm_per_hz") {
            sys.noise_psd_w_per_hz = dbm_to_watt(parse_number(key, value));
        } else if (key == "rate_mbps") {
            sys.target_rate_bps = parse_number(key, value) * 1e6;
        } else if (key == "num_subarrays") {
            sys.num_subarrays = static_cast<int>(parse_integer(key, value));
        } else if (key == "antennas_per_subarray") {
            sys.antennas_per_subarray = static_cast<int>(parse_integer(key, value));
        } else if (key == "p_max_dbm") {
            pa.p_max_subarray_w = dbm_to_watt(parse_number(key, value));
        } else if (key == "eta_max") {
            pa.eta_max = parse_number(key, value);
        } else if (key == "p_base_mw") {
            circuit.p_base_w = parse_number(key, value) * 1e-3;
        } else if (key == "p_idle_mw") {
            circuit.p_idle_w = parse_number(key, value) * 1e-3;
        } else if (key == "epsilon_mw_per_mbps") {
            circuit.epsilon_j_per_bit = parse_number(key, value) * 1e-9;
        } else if (key == "distance_m") {
            pl.distance_m = parse_number(key, value);
        } else if (key == "shadowing_db") {
            pl.shadowing_sigma_db = parse_number(key, value);
        } else if (key == "pathloss_intercept_db") {
            pl.intercept_db = parse_number(key, value);
        } else if (key == "pathloss_slope_db") {
            pl.slope_db_per_decade = parse_number(key, value);
        } else if (key == "mode") {
            cfg.sweep.modes.clear();
            if (value == "both") {
                cfg.sweep.modes = {BeamformingMode::Coherent, BeamformingMode::NonCoherent};
            } else {
                cfg.sweep.modes = {parse_beamforming_mode(value)};
            }
        } else if (key == "schemes") {
            cfg.sweep.schemes.clear();
            for (const auto& item : split_list(value)) {
                if (item == "all") {
                    cfg.sweep.schemes = {SchemeId::Proposed, SchemeId::Fixed,
                                         SchemeId::UniformDuration, SchemeId::WaterFilling};
                    break;
                }
                cfg.sweep.schemes.push_back(parse_scheme_id(item));
            }
            if (cfg.sweep.schemes.empty()) throw ConfigError(key, "empty scheme list");
        } else if (key == "sweep_parameter") {
            cfg.sweep.parameter = parse_swept_parameter(value);
        } else if (key == "sweep_values") {
            raw_values.clear();
            for (const auto& item : split_list(value)) {
                raw_values.push_back(parse_number(key, item));
            }
            if (raw_values.empty()) throw ConfigError(key, "empty value list");
            saw_values = true;
        } else if (key == "trials") {
            cfg.sweep.trials = static_cast<int>(parse_integer(key, value));
        } else if (key == "seed") {
            cfg.sweep.seed = static_cast<std::uint64_t>(parse_integer(key, value));
        } else if (key == "fixed_total_bits") {
            cfg.sweep.fixed_total_bits = parse_number(key, value);
        } else if (key == "workers") {
            cfg.sweep.workers = static_cast<int>(parse_integer(key, value));
        } else {
            throw ConfigError(key, "unknown key");
        }
    }

    if (saw_values) {
        cfg.sweep.values.clear();
        for (double v : raw_values) {
            cfg.sweep.values.push_back(parameter_to_si(cfg.sweep.parameter, v));
        }
    } else if (cfg.sweep.parameter != SweptParameter::TargetRate) {
        throw ConfigError("sweep_values", "required when sweep_parameter is set");
    }
    if (cfg.sweep.fixed_total_bits && cfg.sweep.parameter != SweptParameter::SlotDuration) {
        throw ConfigError("fixed_total_bits", "only valid when sweeping T");
    }

    try {
        cfg.scenario.system.validate();
        cfg.scenario.pa.validate();
        cfg.scenario.circuit.validate();
        cfg.scenario.pathloss.validate();
        cfg.sweep.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError("validation", err.what());
    }
    if (!cfg.sweep.modes.empty()) cfg.scenario.system.mode = cfg.sweep.modes.front();
    return cfg;
}

LoadedConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("--config", "cannot open '" + path.string() + "'");
    return parse_config(is);
}

}  // namespace hybridee
