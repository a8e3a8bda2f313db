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

#include "hybridee/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace hybridee {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

BeamformingMode parse_mode(const std::string& s) {
    if (s == "coherent") return BeamformingMode::Coherent;
    detail::require(s == "noncoherent", "results csv: unknown mode '" + s + "'");
    return BeamformingMode::NonCoherent;
}

SchemeId parse_scheme(const std::string& s) {
    if (s == "proposed") return SchemeId::Proposed;
    if (s == "fixed") return SchemeId::Fixed;
    if (s == "uniform-duration") return SchemeId::UniformDuration;
    detail::require(s == "water-filling", "results csv: unknown scheme '" + s + "'");
    return SchemeId::WaterFilling;
}

const char kResultsHeader[] =
    "mode,scheme,value,trial,t_star_s,m_star,energy_j,ee_bit_per_j,feasible,powers_w";

}  // namespace

void write_results_csv(std::ostream& os, std::span<const ResultRow> rows) {
    os << kResultsHeader << '\n';
    for (const auto& r : rows) {
        os << to_string(r.mode) << ',' << to_string(r.scheme) << ',' << fmt(r.value) << ','
           << r.trial << ',';
        if (r.feasible) {
            os << fmt(r.t_star_s) << ',' << r.m_star << ',' << fmt(r.energy_j) << ','
               << fmt(r.ee_bit_per_j);
        } else {
            os << ",,,";
        }
        os << ',' << (r.feasible ? "true" : "false") << ',';
        std::string powers;
        for (std::size_t i = 0; i < r.powers_w.size(); ++i) {
            if (i) powers += ';';
            powers += fmt(r.powers_w[i]);
        }
        os << csv_escape(powers) << '\n';
    }
}

std::vector<ResultRow> parse_results_csv(std::istream& is) {
    std::string line;
    detail::require(static_cast<bool>(std::getline(is, line)), "results csv: missing header");

    std::vector<ResultRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        detail::require(fields.size() == 10, "results csv: expected 10 fields per row");
        ResultRow r;
        r.mode = parse_mode(fields[0]);
        r.scheme = parse_scheme(fields[1]);
        r.value = std::stod(fields[2]);
        r.trial = std::stoi(fields[3]);
        r.feasible = fields[8] == "true";
        if (r.feasible) {
            r.t_star_s = std::stod(fields[4]);
            r.m_star = std::stoi(fields[5]);
            r.energy_j = std::stod(fields[6]);
            r.ee_bit_per_j = std::stod(fields[7]);
        }
        if (!fields[9].empty()) {
            std::istringstream ps(fields[9]);
            std::string tok;
            while (std::getline(ps, tok, ';')) r.powers_w.push_back(std::stod(tok));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_summary_csv(std::ostream& os, std::span<const SummaryRow> rows) {
    os << "mode,scheme,value,trials_used,trials_excluded,ee_mean,ee_ci95,"
          "t_star_mean_s,t_star_ci95_s,m_star_mean,m_star_ci95,degenerate_ci\n";
    for (const auto& s : rows) {
        os << to_string(s.mode) << ',' << to_string(s.scheme) << ',' << fmt(s.value) << ','
           << s.trials_used << ',' << s.trials_excluded << ',' << fmt(s.ee_mean) << ','
           << fmt(s.ee_ci95) << ',' << fmt(s.t_star_mean_s) << ',' << fmt(s.t_star_ci95_s) << ','
           << fmt(s.m_star_mean) << ',' << fmt(s.m_star_ci95) << ','
           << (s.degenerate_ci ? "true" : "false") << '\n';
    }
}

std::string render_ee_chart(std::span<const SummaryRow> rows, const std::string& x_label) {
    if (rows.empty()) return {};

    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> points;
    };
    std::vector<Series> series;
    std::map<std::pair<int, int>, std::size_t> index;
    for (const auto& s : rows) {
        if (s.trials_used == 0) continue;
        const auto key = std::make_pair(static_cast<int>(s.mode), static_cast<int>(s.scheme));
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, series.size()).first;
            series.push_back({std::string(to_string(s.mode)) + "/" + to_string(s.scheme), {}});
        }
        series[it->second].points.emplace_back(s.value, s.ee_mean);
    }
    if (series.empty()) return {};

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& sr : series) {
        for (const auto& [x, y] : sr.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max == x_min) {
        x_min -= 0.5 * std::max(1.0, std::abs(x_min));
        x_max += 0.5 * std::max(1.0, std::abs(x_max));
    }
    if (y_max == y_min) {
        y_min -= 0.5 * std::max(1.0, std::abs(y_min));
        y_max += 0.5 * std::max(1.0, std::abs(y_max));
    }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double width = 960, height = 600;
    const double ml = 90, mr = 240, mt = 40, mb = 70;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                     "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    const int n_ticks = 5;
    svg << "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#333\">\n";
    for (int i = 0; i <= n_ticks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / n_ticks;
        const double fy = y_min + (y_max - y_min) * i / n_ticks;
        svg << "<line x1=\"" << fmt_short(sx(fx)) << "\" y1=\"" << fmt_short(mt) << "\" x2=\""
            << fmt_short(sx(fx)) << "\" y2=\"" << fmt_short(mt + ph)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        svg << "<line x1=\"" << fmt_short(ml) << "\" y1=\"" << fmt_short(sy(fy)) << "\" x2=\""
            << fmt_short(ml + pw) << "\" y2=\"" << fmt_short(sy(fy))
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt_short(sx(fx)) << "\" y=\"" << fmt_short(mt + ph + 20)
            << "\" text-anchor=\"middle\">" << fmt_short(fx) << "</text>\n";
        svg << "<text x=\"" << fmt_short(ml - 8) << "\" y=\"" << fmt_short(sy(fy) + 4)
            << "\" text-anchor=\"end\">" << fmt_short(fy) << "</text>\n";
    }
    svg << "<text x=\"" << fmt_short(ml + pw / 2) << "\" y=\"" << fmt_short(height - 18)
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    svg << "<text x=\"20\" y=\"" << fmt_short(mt + ph / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << fmt_short(mt + ph / 2)
        << ")\">energy efficiency [bit/J]</text>\n";
    svg << "</g>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        svg << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < series[s].points.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt_short(sx(series[s].points[i].first)) << ','
                << fmt_short(sy(series[s].points[i].second));
        }
        svg << "\"/>\n";
        const double ly = mt + 16 + 22 * static_cast<double>(s);
        svg << "<line x1=\"" << fmt_short(ml + pw + 14) << "\" y1=\"" << fmt_short(ly)
            << "\" x2=\"" << fmt_short(ml + pw + 44) << "\" y2=\"" << fmt_short(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text font-family=\"sans-serif\" font-size=\"13\" fill=\"#333\" x=\""
            << fmt_short(ml + pw + 50) << "\" y=\"" << fmt_short(ly + 4) << "\">"
            << series[s].name << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::filesystem::path> emit_outputs(std::span<const ResultRow> rows,
                                                std::span<const SummaryRow> summaries,
                                                const std::filesystem::path& out_dir,
                                                SweptParameter parameter,
                                                const EmitOptions& options) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    detail::require(!ec, "emit_outputs: cannot create '" + out_dir.string() + "': " + ec.message());

    std::vector<std::filesystem::path> written;
    auto write_file = [&](const std::filesystem::path& path, auto&& writer) {
        std::ofstream os(path, std::ios::binary);
        detail::require(static_cast<bool>(os), "emit_outputs: cannot open '" + path.string() + "'");
        writer(os);
        os.flush();
        detail::require(static_cast<bool>(os), "emit_outputs: write failed for '" + path.string() + "'");
        written.push_back(path);
    };

    if (options.csv) {
        write_file(out_dir / "results.csv", [&](std::ostream& os) { write_results_csv(os, rows); });
        write_file(out_dir / "summary.csv",
                   [&](std::ostream& os) { write_summary_csv(os, summaries); });
    }
    if (options.svg && !rows.empty()) {
        const std::string x_label =
            std::string(to_string(parameter)) +
            (config_unit(parameter)[0] ? std::string(" [") + config_unit(parameter) + "]" : "");
        std::vector<SummaryRow> plot_rows(summaries.begin(), summaries.end());
        for (auto& s : plot_rows) s.value = parameter_from_si(parameter, s.value);
        const std::string svg = render_ee_chart(plot_rows, x_label);
        if (!svg.empty()) {
            const std::string name = std::string("ee_vs_") + to_string(parameter) + ".svg";
            write_file(out_dir / name, [&](std::ostream& os) { os << svg; });
        }
    }
    return written;
}

}  // namespace hybridee
