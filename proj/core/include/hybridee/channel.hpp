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
#include <iosfwd>
#include <span>
#include <vector>

#include "hybridee/types.hpp"

namespace hybridee {

/// Log-distance path loss with lognormal shadowing:
///   PL[dB] = intercept + slope * log10(d) + xi,  xi ~ N(0, sigma^2).
/// One shadowing draw per realization, shared by all antennas of the link.
struct PathLossModel {
    double distance_m = 200.0;
    double shadowing_sigma_db = 5.8;
    double intercept_db = 61.4;
    double slope_db_per_decade = 20.0;

    void validate() const;
};

/// i.i.d. Rayleigh draw for every antenna, scaled by the path loss model.
/// Deterministic in (seed, trial) independent of worker count.
ChannelRealization sample_channels(const SystemConfig& cfg, const PathLossModel& pl,
                                   std::uint64_t seed, std::uint64_t trial);

/// Reduces a realization to subarray-level gains for one beamforming mode:
/// magnitude of the coherent sum over antennas (non-coherent) or sum of
/// magnitudes (coherent), both scaled by 1/sqrt(K), then rescaled by the PA
/// constants into the activation-ranking gain.
EffectiveChannel effective_gains(const ChannelRealization& real, const PaModel& pa,
                                 BeamformingMode mode);

/// Channel dump: CSV with columns (trial, m, k, re, im), one block of rows
/// per realization, round-trip exact. Used to replay fixed realizations.
void write_channel_dump(std::ostream& os, std::span<const ChannelRealization> realizations);
std::vector<ChannelRealization> read_channel_dump(std::istream& is);

}  // namespace hybridee
