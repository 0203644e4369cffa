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

#include "weakgauss/measurement.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakgauss/error.h"

using namespace weakgauss;

Meter weakgauss::make_meter(double dqm) {
    if (!std::isfinite(dqm) || dqm <= 0) {
        throw InvalidParameter("meter position spread must be positive and finite, got " + std::to_string(dqm));
    }
    return Meter(dqm, 1 / (2 * dqm));
}

Matrix4 weakgauss::beta2() {
    return {{
        {0, 0, 1, 0},
        {0, 0, 0, 1},
        {-1, 0, 0, 0},
        {0, -1, 0, 0},
    }};
}

Phase4 InteractionSymplectic::apply(const Phase4 &xi) const {
    Phase4 out{};
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            out[r] += m[r][c] * xi[c];
        }
    }
    return out;
}

double InteractionSymplectic::symplectic_defect() const {
    Matrix4 b = beta2();
    double worst = 0;
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            double acc = 0;
            for (size_t i = 0; i < 4; i++) {
                for (size_t j = 0; j < 4; j++) {
                    acc += m[i][r] * b[i][j] * m[j][c];
                }
            }
            worst = std::max(worst, std::abs(acc - b[r][c]));
        }
    }
    return worst;
}

InteractionSymplectic weakgauss::weak_q_interaction() {
    return {{{
        {1, 0, 0, 0},
        {1, 1, 0, 0},
        {0, 0, 1, -1},
        {0, 0, 0, 1},
    }}};
}

InteractionSymplectic weakgauss::weak_p_interaction() {
    return {{{
        {1, 0, 0, 1},
        {0, 1, 1, 0},
        {0, 0, 1, 0},
        {0, 0, 0, 1},
    }}};
}

// The meter starts uncorrelated with the system, so each coupling adds the
// meter variances to the pointer and to the conjugate system quadrature.

Gaussian1D weakgauss::weak_q_reading_density(const GaussianState &state, const Meter &meter) {
    return {state.q0, state.dq * state.dq + meter.dqm() * meter.dqm()};
}

GaussianState weakgauss::post_weak_q_state(const GaussianState &state, const Meter &meter) {
    return {state.q0, state.p0, state.dq, std::sqrt(state.dp * state.dp + meter.dpm() * meter.dpm())};
}

Gaussian1D weakgauss::post_weak_q_projective_p_density(const GaussianState &state, const Meter &meter) {
    return marginal_p(post_weak_q_state(state, meter));
}

Gaussian1D weakgauss::weak_p_reading_density(const GaussianState &state, const Meter &meter) {
    return {state.p0, state.dp * state.dp + meter.dqm() * meter.dqm()};
}

GaussianState weakgauss::post_weak_p_state(const GaussianState &state, const Meter &meter) {
    return {state.q0, state.p0, std::sqrt(state.dq * state.dq + meter.dpm() * meter.dpm()), state.dp};
}

Gaussian1D weakgauss::post_weak_p_projective_q_density(const GaussianState &state, const Meter &meter) {
    return marginal_q(post_weak_p_state(state, meter));
}

Gaussian1D weakgauss::projective_q_density(const GaussianState &state) {
    return marginal_q(state);
}

Gaussian1D weakgauss::projective_p_density(const GaussianState &state) {
    return marginal_p(state);
}

double weakgauss::sample(const Gaussian1D &density, Rng &rng) {
    return density.mean + std::sqrt(density.variance) * rng.normal();
}

MeasurementOutcome weakgauss::measure_weak_q(const GaussianState &state, const Meter &meter, Rng &rng) {
    return {sample(weak_q_reading_density(state, meter), rng), post_weak_q_state(state, meter)};
}

MeasurementOutcome weakgauss::measure_weak_p(const GaussianState &state, const Meter &meter, Rng &rng) {
    return {sample(weak_p_reading_density(state, meter), rng), post_weak_p_state(state, meter)};
}
