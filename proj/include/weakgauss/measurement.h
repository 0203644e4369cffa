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

#ifndef _WEAKGAUSS_MEASUREMENT_H
#define _WEAKGAUSS_MEASUREMENT_H

#include <array>

#include "weakgauss/gaussian_state.h"
#include "weakgauss/rng.h"

namespace weakgauss {

/// Minimum uncertainty pointer state at zero temperature.
///
/// The position spread dqm sets the measurement strength: large dqm is a
/// weak, noisy reading with little back-action; small dqm approaches a
/// projective measurement. The momentum spread is always 1 / (2 dqm).
class Meter {
   public:
    double dqm() const {
        return dqm_;
    }
    double dpm() const {
        return dpm_;
    }

    bool operator==(const Meter &other) const = default;

   private:
    friend Meter make_meter(double dqm);
    Meter(double dqm, double dpm) : dqm_(dqm), dpm_(dpm) {
    }

    double dqm_;
    double dpm_;
};

/// Throws InvalidParameter unless dqm is positive and finite.
Meter make_meter(double dqm);

/// Joint system + meter phase space vector, ordered (q, q_m, p, p_m).
using Phase4 = std::array<double, 4>;
using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Symplectic form beta_2 = [[0, I], [-I, 0]] in the (q, q_m, p, p_m) ordering.
Matrix4 beta2();

/// Linear phase space map generated by an impulsive system-meter coupling.
struct InteractionSymplectic {
    Matrix4 m;

    Phase4 apply(const Phase4 &xi) const;
    /// max |m^T beta_2 m - beta_2| over all entries.
    double symplectic_defect() const;
};

/// H = delta(t - t1) q p_m: (q, q_m, p, p_m) -> (q, q_m + q, p - p_m, p_m).
InteractionSymplectic weak_q_interaction();

/// H = delta(t - t1) p p_m: (q, q_m, p, p_m) -> (q + p_m, q_m + p, p, p_m).
InteractionSymplectic weak_p_interaction();

/// Pointer reading density after a q coupling: N(q0, dq^2 + dqm^2).
Gaussian1D weak_q_reading_density(const GaussianState &state, const Meter &meter);
/// Reduced system state after a q coupling; dp^2 grows by dpm^2.
GaussianState post_weak_q_state(const GaussianState &state, const Meter &meter);
/// Projective p outcome density on the disturbed copy: N(p0, dp^2 + dpm^2).
Gaussian1D post_weak_q_projective_p_density(const GaussianState &state, const Meter &meter);

/// Pointer reading density after a p coupling: N(p0, dp^2 + dqm^2).
Gaussian1D weak_p_reading_density(const GaussianState &state, const Meter &meter);
/// Reduced system state after a p coupling; dq^2 grows by dpm^2.
GaussianState post_weak_p_state(const GaussianState &state, const Meter &meter);
/// Projective q outcome density on the disturbed copy: N(q0, dq^2 + dpm^2).
Gaussian1D post_weak_p_projective_q_density(const GaussianState &state, const Meter &meter);

/// Projective measurement on an undisturbed copy samples the bare marginal.
Gaussian1D projective_q_density(const GaussianState &state);
Gaussian1D projective_p_density(const GaussianState &state);

/// One draw from `density`. Advances `rng` only.
double sample(const Gaussian1D &density, Rng &rng);

/// Pointer value plus the (unconditional) reduced state left behind.
struct MeasurementOutcome {
    double reading;
    GaussianState post_state;
};

MeasurementOutcome measure_weak_q(const GaussianState &state, const Meter &meter, Rng &rng);
MeasurementOutcome measure_weak_p(const GaussianState &state, const Meter &meter, Rng &rng);

}  // namespace weakgauss

#endif
