// Copyright 2026 The weakgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakgauss/result_io.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "weakgauss/error.h"

using namespace weakgauss;
using nlohmann::json;

namespace {

double rounded(double value) {
    return std::strtod(format_real(value).c_str(), nullptr);
}

auto row_key(const ResultRow &r) {
    return std::make_tuple(r.kappa, r.ensemble_size, r.inv_dqm, scheme_name(r.scheme));
}

Scheme parse_scheme(std::string_view name) {
    if (name == scheme_name(Scheme::weak_sequential)) {
        return Scheme::weak_sequential;
    }
    if (name == scheme_name(Scheme::projective_baseline)) {
        return Scheme::projective_baseline;
    }
    throw ConfigError("unknown scheme '" + std::string(name) + "'", "scheme");
}

double parse_real(const std::string &s, const char *field) {
    char *end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') {
        throw ConfigError(std::string("bad number in column ") + field + ": '" + s + "'", field);
    }
    return v;
}

uint64_t parse_count(const std::string &s, const char *field) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || s[0] == '-') {
        throw ConfigError(std::string("bad integer in column ") + field + ": '" + s + "'", field);
    }
    return v;
}

std::vector<ResultRow> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != RESULT_CSV_HEADER) {
        throw ConfigError("result CSV must start with the header: " + std::string(RESULT_CSV_HEADER), "", 1);
    }
    std::vector<ResultRow> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 11) {
            throw ConfigError("expected 11 columns on line " + std::to_string(line_no), "", line_no);
        }
        rows.push_back({
            parse_real(cells[0], "kappa"),
            parse_count(cells[1], "ensemble_size"),
            parse_real(cells[2], "inv_dqm"),
            parse_scheme(cells[3]),
            parse_real(cells[4], "d1_mean"),
            parse_real(cells[5], "d1_se"),
            parse_real(cells[6], "d2_mean"),
            parse_real(cells[7], "d2_se"),
            parse_count(cells[8], "n_states"),
            parse_count(cells[9], "n_runs"),
            parse_count(cells[10], "master_seed"),
        });
    }
    return rows;
}

std::vector<ResultRow> parse_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("malformed result JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw ConfigError("result JSON must be an array of rows");
    }
    std::vector<ResultRow> rows;
    try {
        for (const auto &o : doc) {
            rows.push_back({
                o.at("kappa").get<double>(),
                o.at("ensemble_size").get<size_t>(),
                o.at("inv_dqm").get<double>(),
                parse_scheme(o.at("scheme").get<std::string>()),
                o.at("d1_mean").get<double>(),
                o.at("d1_se").get<double>(),
                o.at("d2_mean").get<double>(),
                o.at("d2_se").get<double>(),
                o.at("n_states").get<size_t>(),
                o.at("n_runs").get<size_t>(),
                o.at("master_seed").get<uint64_t>(),
            });
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad result row: ") + e.what());
    }
    return rows;
}

}  // namespace

std::string weakgauss::format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::vector<ResultRow> weakgauss::result_rows(std::span<const SweepResult> results) {
    std::vector<ResultRow> rows;
    for (const auto &result : results) {
        const ExperimentConfig &c = result.config;
        for (const auto &curve : result.curves) {
            for (const auto &p : curve.points) {
                auto row = [&](Scheme scheme, double d1, double d1_se, double d2, double d2_se) {
                    return ResultRow{
                        rounded(c.kappa),
                        curve.ensemble_size,
                        rounded(p.inv_dqm),
                        scheme,
                        rounded(d1),
                        rounded(d1_se),
                        rounded(d2),
                        rounded(d2_se),
                        c.n_states,
                        c.n_runs,
                        c.master_seed,
                    };
                };
                if (result.has_weak) {
                    rows.push_back(row(
                        Scheme::weak_sequential, p.d1_weak_mean, p.d1_weak_se, p.d2_weak_mean, p.d2_weak_se));
                }
                if (result.has_proj) {
                    rows.push_back(row(
                        Scheme::projective_baseline, p.d1_proj_mean, p.d1_proj_se, p.d2_proj_mean, p.d2_proj_se));
                }
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow &a, const ResultRow &b) {
        return row_key(a) < row_key(b);
    });
    return rows;
}

void weakgauss::write_rows(std::span<const ResultRow> rows, OutputFormat format, std::ostream &out) {
    if (format == OutputFormat::csv) {
        out << RESULT_CSV_HEADER << '\n';
        for (const auto &r : rows) {
            out << format_real(r.kappa) << ',' << r.ensemble_size << ',' << format_real(r.inv_dqm) << ','
                << scheme_name(r.scheme) << ',' << format_real(r.d1_mean) << ',' << format_real(r.d1_se) << ','
                << format_real(r.d2_mean) << ',' << format_real(r.d2_se) << ',' << r.n_states << ',' << r.n_runs
                << ',' << r.master_seed << '\n';
        }
        return;
    }
    json arr = json::array();
    for (const auto &r : rows) {
        arr.push_back({
            {"kappa", r.kappa},
            {"ensemble_size", r.ensemble_size},
            {"inv_dqm", r.inv_dqm},
            {"scheme", scheme_name(r.scheme)},
            {"d1_mean", r.d1_mean},
            {"d1_se", r.d1_se},
            {"d2_mean", r.d2_mean},
            {"d2_se", r.d2_se},
            {"n_states", r.n_states},
            {"n_runs", r.n_runs},
            {"master_seed", r.master_seed},
        });
    }
    out << arr.dump(2) << '\n';
}

void weakgauss::emit_rows(std::span<const SweepResult> results, OutputFormat format, const std::string &path) {
    std::ostringstream buf;
    write_rows(result_rows(results), format, buf);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << buf.str();
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

std::vector<ResultRow> weakgauss::parse_rows(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (text[first] == '[' || text[first] == '{')) {
        return parse_json(text);
    }
    return parse_csv(text);
}

std::vector<std::string> weakgauss::write_plot_data(std::span<const ResultRow> rows, const std::string &out_dir) {
    struct Panel {
        std::optional<double> d1_weak, d1_proj, d2_weak, d2_proj;
    };
    std::map<std::pair<double, size_t>, std::map<double, Panel>> panels;
    for (const auto &r : rows) {
        Panel &p = panels[{r.kappa, r.ensemble_size}][r.inv_dqm];
        if (r.scheme == Scheme::weak_sequential) {
            p.d1_weak = r.d1_mean;
            p.d2_weak = r.d2_mean;
        } else {
            p.d1_proj = r.d1_mean;
            p.d2_proj = r.d2_mean;
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create directory '" + out_dir + "': " + ec.message());
    }
    auto cell = [](const std::optional<double> &v) {
        return v ? format_real(*v) : std::string();
    };
    std::vector<std::string> written;
    for (const auto &[key, points] : panels) {
        std::string name = "panel_kappa" + format_real(key.first) + "_n" + std::to_string(key.second) + ".csv";
        std::string path = (std::filesystem::path(out_dir) / name).string();
        std::ostringstream buf;
        buf << "inv_dqm,d1_weak,d1_proj,d2_weak,d2_proj\n";
        for (const auto &[x, p] : points) {
            buf << format_real(x) << ',' << cell(p.d1_weak) << ',' << cell(p.d1_proj) << ',' << cell(p.d2_weak) << ','
                << cell(p.d2_proj) << '\n';
        }
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << buf.str())) {
            throw IoError("cannot write '" + path + "'");
        }
        written.push_back(path);
    }
    return written;
}
