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

#include <algorithm>
#include <cmath>
#include <ostream>

#include "weakgauss/experiment.h"
#include "weakgauss/gaussian_state.h"
#include "weakgauss/measurement.h"
#include "weakgauss/protocol.h"
#include "weakgauss/result_io.h"
#include "weakgauss/rng.h"

using namespace weakgauss;

bool SelfcheckReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) {
        return c.passed;
    });
}

static CheckResult check_uncertainty(Rng &rng) {
    GaussianState coherent = make_state({0, 1, 0, 0});
    double worst = std::abs(variance_matrix(coherent).det() - 0.25);
    bool ok = uncertainty_ok(variance_matrix(coherent));
    for (int k = 0; k < 10000; k++) {
        double kappa = 1 - rng.uniform01();  // (0, 1]
        GaussianState s = make_state({rng.uniform(-3, 3), kappa, rng.uniform(-5, 5), rng.uniform(-5, 5)});
        worst = std::max(worst, std::abs(s.dq * s.dp - 1 / (2 * kappa)) * kappa);
        ok = ok && uncertainty_ok(variance_matrix(s));
    }
    return {"uncertainty saturation", ok && worst < 1e-12, worst, 1e-12, "relative |dq*dp - 1/(2 kappa)|"};
}

static CheckResult check_symplectic() {
    double worst = std::max(weak_q_interaction().symplectic_defect(), weak_p_interaction().symplectic_defect());
    return {"symplectic beta2", worst < 1e-12, worst, 1e-12, "max |m^T beta2 m - beta2|"};
}

static CheckResult check_variance_addition(Rng &rng) {
    double worst = 0;
    bool unchanged = true;
    for (int k = 0; k < 10000; k++) {
        GaussianState s = make_state({rng.uniform(-1, 1), 1 - 0.5 * rng.uniform01(), rng.uniform(-3, 3), rng.uniform(-3, 3)});
        Meter m = make_meter(std::exp(rng.uniform(-2, 2)));
        double qm2 = m.dqm() * m.dqm();
        double pm2 = m.dpm() * m.dpm();
        auto rel = [](double got, double want) {
            return std::abs(got - want) / want;
        };
        worst = std::max(worst, rel(weak_q_reading_density(s, m).variance, s.dq * s.dq + qm2));
        worst = std::max(worst, rel(weak_p_reading_density(s, m).variance, s.dp * s.dp + qm2));
        worst = std::max(worst, rel(post_weak_q_projective_p_density(s, m).variance, s.dp * s.dp + pm2));
        worst = std::max(worst, rel(post_weak_p_projective_q_density(s, m).variance, s.dq * s.dq + pm2));
        unchanged = unchanged && post_weak_q_state(s, m).dq == s.dq && post_weak_p_state(s, m).dp == s.dp;
    }
    return {
        "variance addition",
        unchanged && worst < 1e-12,
        worst,
        1e-12,
        unchanged ? "relative error of added variances" : "measured quadrature spread changed",
    };
}

static CheckResult check_d1_law(uint64_t seed) {
    struct Case {
        StateParams params;
        size_t n;
        double inv_dqm;
    };
    const Case cases[] = {
        {{0, 1, 0.3, -1.2}, 20, std::sqrt(2.0)},
        {{1, 1, -2, 2.5}, 6, 0.5},
        {{-0.5, 0.8, 1, 1}, 10, 3},
    };
    const int trials = 10000;
    double worst = 0;
    std::string detail;
    for (const auto &c : cases) {
        GaussianState s = make_state(c.params);
        Meter m = make_meter(1 / c.inv_dqm);
        double intrinsic = s.dq * s.dq + s.dp * s.dp;
        double n = static_cast<double>(c.n);
        double expect_weak = (intrinsic + m.dqm() * m.dqm() + m.dpm() * m.dpm()) / n;
        double expect_proj = 2 * intrinsic / n;
        double sum_weak = 0, sum_proj = 0;
        for (int t = 0; t < trials; t++) {
            Rng rng(derive_stream_seed(seed, {c.n, static_cast<uint64_t>(t)}));
            TrialOutcome o = run_trial(s, c.n, c.inv_dqm, rng);
            sum_weak += o.weak.d1;
            sum_proj += o.proj.d1;
        }
        double dev_weak = std::abs(sum_weak / trials / expect_weak - 1);
        double dev_proj = std::abs(sum_proj / trials / expect_proj - 1);
        worst = std::max({worst, dev_weak, dev_proj});
        detail += "n=" + std::to_string(c.n) + " inv_dqm=" + format_real(c.inv_dqm) + ": weak " +
                  format_real(dev_weak) + ", proj " + format_real(dev_proj) + "; ";
    }
    return {"closed-form d1 law (1e4 trials)", worst < 0.05, worst, 0.05, detail};
}

SelfcheckReport weakgauss::validate_selfcheck(uint64_t seed) {
    Rng rng(seed);
    SelfcheckReport report;
    report.checks.push_back(check_uncertainty(rng));
    report.checks.push_back(check_symplectic());
    report.checks.push_back(check_variance_addition(rng));
    report.checks.push_back(check_d1_law(seed));
    return report;
}

void weakgauss::print_report(const SelfcheckReport &report, std::ostream &out) {
    for (const auto &c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": measured " << format_real(c.measured) << " (bound "
            << format_real(c.threshold) << ")";
        if (!c.detail.empty()) {
            out << " [" << c.detail << "]";
        }
        out << '\n';
    }
}
