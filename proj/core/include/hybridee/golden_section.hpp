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
#include <functional>

namespace hybridee {

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search on [lo, hi] to absolute tolerance `tol` on x.
/// Returns the best point among all evaluations, endpoints included, so a
/// monotone function yields its boundary exactly.
inline ScalarMinimum golden_section_minimize(const std::function<double(double)>& f,
                                             double lo, double hi, double tol,
                                             int max_iterations = 200) {
    ScalarMinimum best{lo, f(lo)};
    if (hi <= lo) return best;
    const double f_hi = f(hi);
    if (f_hi < best.value) best = {hi, f_hi};

    const double inv_phi = 0.6180339887498949; // (sqrt(5) - 1) / 2
    double a = lo, b = hi;
    double c = b - (b - a) * inv_phi;
    double d = a + (b - a) * inv_phi;
    double fc = f(c), fd = f(d);
    if (fc < best.value) best = {c, fc};
    if (fd < best.value) best = {d, fd};

    for (int it = 0; it < max_iterations && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c);
            if (fc < best.value) best = {c, fc};
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d);
            if (fd < best.value) best = {d, fd};
        }
    }
    return best;
}

}  // namespace hybridee
