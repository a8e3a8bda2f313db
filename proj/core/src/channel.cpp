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

#include "hybridee/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hybridee/rng.hpp"

namespace hybridee {

void PathLossModel::validate() const {
    detail::require(distance_m > 0.0, "PathLossModel.distance_m must be > 0");
    detail::require(shadowing_sigma_db >= 0.0, "PathLossModel.shadowing_sigma_db must be >= 0");
}

ChannelRealization sample_channels(const SystemConfig& cfg, const PathLossModel& pl,
                                   std::uint64_t seed, std::uint64_t trial) {
    cfg.validate();
    pl.validate();

    const CounterRng rng(seed, trial);
    ChannelRealization out;
    out.num_subarrays = cfg.num_subarrays;
    out.antennas_per_subarray = cfg.antennas_per_subarray;
    out.distance_m = pl.distance_m;
    out.shadowing_db = rng.gaussian(0) * pl.shadowing_sigma_db;

    const double pl_db = pl.intercept_db +
                         pl.slope_db_per_decade * std::log10(pl.distance_m) +
                         out.shadowing_db;
    const double amp = std::pow(10.0, -pl_db / 20.0);

    const int total = cfg.num_subarrays * cfg.antennas_per_subarray;
    out.coefficients.resize(total);
    // Counter 0 is the shadowing draw; fading draws are indexed by antenna
    // position so that growing M extends a realization without reshuffling.
    for (int i = 0; i < total; ++i) {
        out.coefficients[i] = rng.unit_complex_gaussian(1 + static_cast<std::uint64_t>(i)) * amp;
    }
    return out;
}

EffectiveChannel effective_gains(const ChannelRealization& real, const PaModel& pa,
                                 BeamformingMode mode) {
    real.validate();
    pa.validate();

    const int m_total = real.num_subarrays;
    const int k_total = real.antennas_per_subarray;
    const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k_total));
    const double gain_scale = pa.eta_max / std::sqrt(pa.p_max_subarray_w);

    EffectiveChannel eff;
    eff.mode = mode;
    eff.amplitude.resize(m_total);
    eff.eff_gain.resize(m_total);
    for (int m = 0; m < m_total; ++m) {
        double combined = 0.0;
        if (mode == BeamformingMode::NonCoherent) {
            std::complex<double> sum{0.0, 0.0};
            for (int k = 0; k < k_total; ++k) sum += real.coeff(m, k);
            combined = std::abs(sum);
        } else {
            for (int k = 0; k < k_total; ++k) combined += std::abs(real.coeff(m, k));
        }
        eff.amplitude[m] = combined * inv_sqrt_k;
        eff.eff_gain[m] = eff.amplitude[m] * gain_scale;
    }

    eff.order.resize(m_total);
    std::iota(eff.order.begin(), eff.order.end(), 0);
    std::stable_sort(eff.order.begin(), eff.order.end(),
                     [&](int a, int b) { return eff.eff_gain[a] > eff.eff_gain[b]; });
    return eff;
}

void write_channel_dump(std::ostream& os, std::span<const ChannelRealization> realizations) {
    os << "trial,m,k,re,im\n";
    char buf[64];
    for (std::size_t trial = 0; trial < realizations.size(); ++trial) {
        const auto& real = realizations[trial];
        for (int m = 0; m < real.num_subarrays; ++m) {
            for (int k = 0; k < real.antennas_per_subarray; ++k) {
                const auto c = real.coeff(m, k);
                os << trial << ',' << m << ',' << k << ',';
                std::snprintf(buf, sizeof buf, "%.17g", c.real());
                os << buf << ',';
                std::snprintf(buf, sizeof buf, "%.17g", c.imag());
                os << buf << '\n';
            }
        }
    }
}

std::vector<ChannelRealization> read_channel_dump(std::istream& is) {
    std::string line;
    detail::require(static_cast<bool>(std::getline(is, line)), "channel dump: missing header");

    struct Entry {
        int m, k;
        std::complex<double> c;
    };
    std::map<long, std::vector<Entry>> by_trial;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        long vals[3];
        for (int i = 0; i < 3; ++i) {
            detail::require(static_cast<bool>(std::getline(row, field, ',')),
                            "channel dump: short row");
            vals[i] = std::stol(field);
        }
        detail::require(static_cast<bool>(std::getline(row, field, ',')), "channel dump: short row");
        const double re = std::stod(field);
        detail::require(static_cast<bool>(std::getline(row, field, ',')), "channel dump: short row");
        const double im = std::stod(field);
        by_trial[vals[0]].push_back({static_cast<int>(vals[1]), static_cast<int>(vals[2]), {re, im}});
    }

    std::vector<ChannelRealization> out;
    for (auto& [trial, entries] : by_trial) {
        int m_max = 0, k_max = 0;
        for (const auto& e : entries) {
            m_max = std::max(m_max, e.m);
            k_max = std::max(k_max, e.k);
        }
        ChannelRealization real;
        real.num_subarrays = m_max + 1;
        real.antennas_per_subarray = k_max + 1;
        real.coefficients.assign(static_cast<std::size_t>(m_max + 1) * (k_max + 1), {0.0, 0.0});
        for (const auto& e : entries) {
            real.coefficients[static_cast<std::size_t>(e.m) * (k_max + 1) + e.k] = e.c;
        }
        real.validate();
        out.push_back(std::move(real));
    }
    return out;
}

}  // namespace hybridee
