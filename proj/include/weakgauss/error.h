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

#ifndef _WEAKGAUSS_ERROR_H
#define _WEAKGAUSS_ERROR_H

#include <stdexcept>
#include <string>

namespace weakgauss {

/// A numeric argument is outside its documented domain (kappa, meter spread, ...).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Ensemble too small (or of the wrong parity) for the requested protocol.
struct InsufficientEnsemble : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A reading channel does not hold enough samples to form an estimate.
struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or invalid experiment configuration.
///
/// `field` names the offending key when known; `line` is 1-based and 0 when
/// the error is not tied to a location in the source document.
struct ConfigError : std::runtime_error {
    std::string field;
    size_t line;
    ConfigError(const std::string &message, std::string field = "", size_t line = 0)
        : std::runtime_error(message), field(std::move(field)), line(line) {
    }
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace weakgauss

#endif
