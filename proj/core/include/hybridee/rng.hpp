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

#include <cmath>
#include <complex>
#include <cstdint>

namespace hybridee {

/// Counter-based splittable generator. Every draw is a pure function of
/// (seed, stream, counter), so realizations are reproducible regardless of
/// worker count and draws can be indexed randomly. Gaussian draws use the
/// Box-Muller transform on two uniforms; draw `c` consumes bit counters
/// 2c and 2c+1, so gaussian and complex draws must not share counters.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed ^ 0x9E3779B97F4A7C15ULL) + (stream ^ 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform on (0, 1]; never zero, safe under log().
    double uniform01(std::uint64_t counter) const {
        return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
    }

    double gaussian(std::uint64_t counter) const {
        const double radius = std::sqrt(-2.0 * std::log(uniform01(2 * counter)));
        const double angle = k2Pi * uniform01(2 * counter + 1);
        return radius * std::cos(angle);
    }

    /// Circularly-symmetric complex Gaussian with E|g|^2 = 1.
    std::complex<double> unit_complex_gaussian(std::uint64_t counter) const {
        const double radius = std::sqrt(-std::log(uniform01(2 * counter)));
        const double angle = k2Pi * uniform01(2 * counter + 1);
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    static constexpr double k2Pi = 6.283185307179586;

    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBULL;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t key_;
};

}  // namespace hybridee
