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

#include "weakgauss/gaussian_state.h"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "weakgauss/error.h"

using namespace weakgauss;

static void require_finite(double value, const char *name) {
    if (!std::isfinite(value)) {
        throw InvalidParameter(std::string(name) + " must be finite, got " + std::to_string(value));
    }
}

double Gaussian1D::stddev() const {
    return std::sqrt(variance);
}

double Gaussian1D::pdf(double x) const {
    double d = x - mean;
    return std::exp(-d * d / (2 * variance)) / std::sqrt(2 * std::numbers::pi * variance);
}

GaussianState weakgauss::make_state(const StateParams &params) {
    require_finite(params.u, "u");
    require_finite(params.kappa, "kappa");
    require_finite(params.q0, "q0");
    require_finite(params.p0, "p0");
    if (!(params.kappa > 0 && params.kappa <= 1)) {
        throw InvalidParameter("kappa must lie in (0, 1], got " + std::to_string(params.kappa));
    }

    // V = G^-1 / 2 with G = diag(kappa e^-2u, kappa e^2u).
    double scale = 1 / std::sqrt(2 * params.kappa);
    GaussianState state{params.q0, params.p0, std::exp(params.u) * scale, std::exp(-params.u) * scale};
    if (!(std::isfinite(state.dq) && std::isfinite(state.dp) && state.dq > 0 && state.dp > 0)) {
        throw InvalidParameter("squeezing u=" + std::to_string(params.u) + " overflows the quadrature spreads");
    }
    return state;
}

GaussianState weakgauss::state_from_moments(double q0, double p0, double dq, double dp) {
    require_finite(q0, "q0");
    require_finite(p0, "p0");
    require_finite(dq, "dq");
    require_finite(dp, "dp");
    if (dq <= 0 || dp <= 0) {
        throw InvalidParameter("spreads must be positive");
    }
    if (dq * dp < 0.5 - UNCERTAINTY_TOLERANCE) {
        throw InvalidParameter("spreads violate the uncertainty bound: dq*dp = " + std::to_string(dq * dp));
    }
    return {q0, p0, dq, dp};
}

VarianceMatrix weakgauss::variance_matrix(const GaussianState &state) {
    return {state.dq * state.dq, state.dp * state.dp, 0};
}

bool weakgauss::uncertainty_ok(const VarianceMatrix &v) {
    if (!(std::isfinite(v.vqq) && std::isfinite(v.vpp) && std::isfinite(v.vqp))) {
        return false;
    }
    return v.vqq > 0 && v.vpp > 0 && v.det() >= 0.25 - UNCERTAINTY_TOLERANCE;
}

double weakgauss::wigner_density(const GaussianState &state, double q, double p) {
    double x = (q - state.q0) / state.dq;
    double y = (p - state.p0) / state.dp;
    return std::exp(-0.5 * (x * x + y * y)) / (2 * std::numbers::pi * state.dq * state.dp);
}

Gaussian1D weakgauss::marginal_q(const GaussianState &state) {
    return {state.q0, state.dq * state.dq};
}

Gaussian1D weakgauss::marginal_p(const GaussianState &state) {
    return {state.p0, state.dp * state.dp};
}

GaussianState weakgauss::displace(const GaussianState &state, double dq0, double dp0) {
    return {state.q0 + dq0, state.p0 + dp0, state.dq, state.dp};
}

std::ostream &weakgauss::operator<<(std::ostream &out, const GaussianState &state) {
    return out << "GaussianState{q0=" << state.q0 << ", p0=" << state.p0 << ", dq=" << state.dq
               << ", dp=" << state.dp << "}";
}

std::ostream &weakgauss::operator<<(std::ostream &out, const Gaussian1D &density) {
    return out << "N(" << density.mean << ", " << density.variance << ")";
}
