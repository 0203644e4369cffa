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

#include "weakgauss/selfcheck.h"

#include <sstream>

#include "gtest/gtest.h"

using namespace weakgauss;

TEST(validate_selfcheck, all_checks_pass) {
    SelfcheckReport r = validate_selfcheck();
    ASSERT_EQ(r.checks.size(), 4u);
    for (const auto &c : r.checks) {
        EXPECT_TRUE(c.passed) << c.name << ": " << c.measured << " vs " << c.threshold;
        EXPECT_LT(c.measured, c.threshold) << c.name;
    }
    ASSERT_TRUE(r.all_passed());
    EXPECT_LT(r.checks[3].measured, 0.05);
}

TEST(validate_selfcheck, report_lists_every_check) {
    SelfcheckReport r = validate_selfcheck(3);
    std::ostringstream out;
    print_report(r, out);
    for (const auto &c : r.checks) {
        ASSERT_NE(out.str().find(c.name), std::string::npos);
    }
}

TEST(validate_selfcheck, failure_propagates) {
    SelfcheckReport r{{{"a", true, 0, 1, ""}, {"b", false, 2, 1, ""}}};
    ASSERT_FALSE(r.all_passed());
}
