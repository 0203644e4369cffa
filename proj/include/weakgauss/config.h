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

#ifndef _WEAKGAUSS_CONFIG_H
#define _WEAKGAUSS_CONFIG_H

#include <string>
#include <string_view>

#include "json.hpp"
#include "weakgauss/experiment.h"

namespace weakgauss {

constexpr int CONFIG_SCHEMA_VERSION = 1;

/// Parses a flat JSON object whose keys are ExperimentConfig field names.
///
/// Keys present in `overrides` (also a flat object) replace the document's
/// values. Absent fields take their defaults, except `kappa` which must be
/// given explicitly. Unknown keys are rejected. Empty input is treated as
/// `{}`.
///
/// Throws ConfigError carrying the line (parse errors) or the field name
/// (type and range errors).
ExperimentConfig parse_config(std::string_view document, const nlohmann::json &overrides = nlohmann::json::object());

/// Inverse of parse_config; includes every field.
nlohmann::json config_to_json(const ExperimentConfig &config);

/// Reads a whole file. Throws IoError.
std::string read_file(const std::string &path);

}  // namespace weakgauss

#endif
