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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hybridee/sweep.hpp"

namespace hybridee {

/// Config problems carry the offending key so the CLI can point at it.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct LoadedConfig {
    Scenario scenario;
    SweepSpec sweep;
};

/// Reference scenario used when no config file is given.
Scenario default_scenario();
LoadedConfig default_config();

/// Flat key=value text, '#' comments. Keys carry explicit units
/// (p_max_dbm=46, n0_dbm_per_hz=-174, rate_mbps=60, ...); unknown keys are
/// errors. See the shipped configs/default.ini for the full key set.
LoadedConfig parse_config(std::istream& is);
LoadedConfig load_config_file(const std::filesystem::path& path);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

BeamformingMode parse_beamforming_mode(const std::string& name);  // "coherent"|"noncoherent"
SchemeId parse_scheme_id(const std::string& name);
SweptParameter parse_swept_parameter(const std::string& name);

}  // namespace hybridee
