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

#include "weakgauss/config.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "weakgauss/error.h"

using namespace weakgauss;
using nlohmann::json;

namespace {

const std::set<std::string> KNOWN_KEYS{
    "schema_version",
    "kappa",
    "n_states",
    "n_runs",
    "ensemble_sizes",
    "inv_dqm_grid",
    "u_range",
    "center_range",
    "master_seed",
    "deconvolve",
    "weighting",
    "averaging",
    "d2_form",
};

size_t line_of_byte(std::string_view text, size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

[[noreturn]] void bad_field(const std::string &field, const std::string &expected) {
    throw ConfigError("field '" + field + "' must be " + expected, field);
}

double get_number(const json &v, const std::string &field) {
    if (!v.is_number()) {
        bad_field(field, "a number");
    }
    return v.get<double>();
}

uint64_t get_count(const json &v, const std::string &field) {
    if (v.is_number_unsigned()) {
        return v.get<uint64_t>();
    }
    if (!v.is_number_integer() || v.get<int64_t>() < 0) {
        bad_field(field, "a non-negative integer");
    }
    return static_cast<uint64_t>(v.get<int64_t>());
}

bool get_bool(const json &v, const std::string &field) {
    if (!v.is_boolean()) {
        bad_field(field, "true or false");
    }
    return v.get<bool>();
}

Interval get_interval(const json &v, const std::string &field) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        bad_field(field, "a two-element numeric array [lo, hi]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

ExperimentConfig weakgauss::parse_config(std::string_view document, const json &overrides) {
    json doc;
    bool blank = std::all_of(document.begin(), document.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r';
    });
    if (blank) {
        doc = json::object();
    } else {
        try {
            doc = json::parse(document);
        } catch (const json::parse_error &e) {
            size_t line = line_of_byte(document, e.byte == 0 ? 0 : e.byte - 1);
            throw ConfigError("malformed config at line " + std::to_string(line) + ": " + e.what(), "", line);
        }
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    if (!overrides.is_object()) {
        throw ConfigError("overrides must be a JSON object");
    }
    for (const auto &[key, value] : overrides.items()) {
        doc[key] = value;
    }

    for (const auto &[key, value] : doc.items()) {
        if (!KNOWN_KEYS.contains(key)) {
            throw ConfigError("unknown config field '" + key + "'", key);
        }
    }

    if (doc.contains("schema_version") && get_count(doc["schema_version"], "schema_version") != CONFIG_SCHEMA_VERSION) {
        throw ConfigError(
            "unsupported schema_version; this build reads version " + std::to_string(CONFIG_SCHEMA_VERSION),
            "schema_version");
    }
    if (!doc.contains("kappa")) {
        throw ConfigError("field 'kappa' is required (no default temperature)", "kappa");
    }

    ExperimentConfig c;
    c.kappa = get_number(doc["kappa"], "kappa");
    if (doc.contains("n_states")) {
        c.n_states = get_count(doc["n_states"], "n_states");
    }
    if (doc.contains("n_runs")) {
        c.n_runs = get_count(doc["n_runs"], "n_runs");
    }
    if (doc.contains("ensemble_sizes")) {
        const json &v = doc["ensemble_sizes"];
        if (!v.is_array()) {
            bad_field("ensemble_sizes", "an array of integers");
        }
        c.ensemble_sizes.clear();
        for (const auto &e : v) {
            c.ensemble_sizes.push_back(get_count(e, "ensemble_sizes"));
        }
    }
    if (doc.contains("inv_dqm_grid")) {
        const json &v = doc["inv_dqm_grid"];
        if (!v.is_array()) {
            bad_field("inv_dqm_grid", "an array of numbers");
        }
        c.inv_dqm_grid.clear();
        for (const auto &e : v) {
            c.inv_dqm_grid.push_back(get_number(e, "inv_dqm_grid"));
        }
    }
    if (doc.contains("u_range")) {
        c.u_range = get_interval(doc["u_range"], "u_range");
    }
    if (doc.contains("center_range")) {
        c.center_range = get_interval(doc["center_range"], "center_range");
    }
    if (doc.contains("master_seed")) {
        c.master_seed = get_count(doc["master_seed"], "master_seed");
    }
    if (doc.contains("deconvolve")) {
        c.deconvolve = get_bool(doc["deconvolve"], "deconvolve");
    }
    if (doc.contains("weighting")) {
        c.weighting = get_bool(doc["weighting"], "weighting");
    }
    if (doc.contains("averaging")) {
        const json &v = doc["averaging"];
        if (v == "distances") {
            c.averaging = Averaging::distances;
        } else if (v == "estimates") {
            c.averaging = Averaging::estimates;
        } else {
            bad_field("averaging", "\"distances\" or \"estimates\"");
        }
    }
    if (doc.contains("d2_form")) {
        const json &v = doc["d2_form"];
        if (v == "matched") {
            c.d2_form = SpreadDistanceForm::matched;
        } else if (v == "printed") {
            c.d2_form = SpreadDistanceForm::printed;
        } else {
            bad_field("d2_form", "\"matched\" or \"printed\"");
        }
    }

    validate_config(c);
    return c;
}

json weakgauss::config_to_json(const ExperimentConfig &c) {
    return {
        {"schema_version", CONFIG_SCHEMA_VERSION},
        {"kappa", c.kappa},
        {"n_states", c.n_states},
        {"n_runs", c.n_runs},
        {"ensemble_sizes", c.ensemble_sizes},
        {"inv_dqm_grid", c.inv_dqm_grid},
        {"u_range", {c.u_range.lo, c.u_range.hi}},
        {"center_range", {c.center_range.lo, c.center_range.hi}},
        {"master_seed", c.master_seed},
        {"deconvolve", c.deconvolve},
        {"weighting", c.weighting},
        {"averaging", c.averaging == Averaging::distances ? "distances" : "estimates"},
        {"d2_form", c.d2_form == SpreadDistanceForm::matched ? "matched" : "printed"},
    };
}

std::string weakgauss::read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}
