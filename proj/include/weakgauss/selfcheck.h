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

#ifndef _WEAKGAUSS_SELFCHECK_H
#define _WEAKGAUSS_SELFCHECK_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace weakgauss {

struct CheckResult {
    std::string name;
    bool passed;
    /// Worst observed deviation and the bound it was held to.
    double measured;
    double threshold;
    std::string detail;
};

struct SelfcheckReport {
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

/// Fast analytic invariant suite: uncertainty saturation, symplectic maps,
/// variance-addition laws and the closed-form d1 law at 1e4 trials.
SelfcheckReport validate_selfcheck(uint64_t seed = 7);

void print_report(const SelfcheckReport &report, std::ostream &out);

}  // namespace weakgauss

#endif
