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
#include <span>
#include <string>
#include <vector>

#include "hybridee/sweep.hpp"

namespace hybridee {

/// results.csv: one row per (mode, scheme, value, trial), RFC-4180 quoting,
/// doubles printed round-trip exact. Infeasible rows carry empty numeric
/// fields. parse_results_csv() inverts write_results_csv() bit-exactly.
void write_results_csv(std::ostream& os, std::span<const ResultRow> rows);
std::vector<ResultRow> parse_results_csv(std::istream& is);

void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows);

/// Line chart of mean EE vs the swept value, one polyline per
/// (mode, scheme) series. Empty input renders nothing.
std::string render_ee_chart(std::span<const SummaryRow> rows, const std::string& x_label);

struct EmitOptions {
    bool csv = true;
    bool svg = true;
};

/// Writes results.csv / summary.csv / ee_vs_<param>.svg into out_dir
/// (created if needed) and returns the paths written.
std::vector<std::filesystem::path> emit_outputs(std::span<const ResultRow> rows,
                                                std::span<const SummaryRow> summaries,
                                                const std::filesystem::path& out_dir,
                                                SweptParameter parameter,
                                                const EmitOptions& options = {});

}  // namespace hybridee
