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

#ifndef _WEAKGAUSS_RESULT_IO_H
#define _WEAKGAUSS_RESULT_IO_H

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weakgauss/experiment.h"

namespace weakgauss {

/// Header of result files, schema version 1.
constexpr std::string_view RESULT_CSV_HEADER =
    "kappa,ensemble_size,inv_dqm,scheme,d1_mean,d1_se,d2_mean,d2_se,n_states,n_runs,master_seed";

enum class OutputFormat {
    csv,
    json,
};

struct ResultRow {
    double kappa;
    size_t ensemble_size;
    double inv_dqm;
    Scheme scheme;
    double d1_mean;
    double d1_se;
    double d2_mean;
    double d2_se;
    size_t n_states;
    size_t n_runs;
    uint64_t master_seed;

    bool operator==(const ResultRow &other) const = default;
};

/// Formats a double with 9 significant digits ("%.9g").
std::string format_real(double value);

/// One row per (kappa, size, grid point, scheme), sorted by those keys.
/// Values are rounded to the emitted precision.
std::vector<ResultRow> result_rows(std::span<const SweepResult> results);

void write_rows(std::span<const ResultRow> rows, OutputFormat format, std::ostream &out);

/// Writes the whole file at once. Throws IoError.
void emit_rows(std::span<const SweepResult> results, OutputFormat format, const std::string &path);

/// Parses CSV or JSON produced by write_rows (format is sniffed from the
/// first non-blank character). Throws ConfigError on malformed input.
std::vector<ResultRow> parse_rows(std::string_view text);

/// Writes one `panel_kappa<k>_n<size>.csv` per (kappa, size) with columns
/// inv_dqm,d1_weak,d1_proj,d2_weak,d2_proj; missing schemes are left blank.
/// Returns the paths written. Throws IoError.
std::vector<std::string> write_plot_data(std::span<const ResultRow> rows, const std::string &out_dir);

}  // namespace weakgauss

#endif
