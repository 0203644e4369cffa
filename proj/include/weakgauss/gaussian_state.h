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

#ifndef _WEAKGAUSS_GAUSSIAN_STATE_H
#define _WEAKGAUSS_GAUSSIAN_STATE_H

#include <iosfwd>

namespace weakgauss {

/// Slack allowed on the uncertainty bound so that states sitting exactly on
/// it (coherent states) survive floating point round-off.
constexpr double UNCERTAINTY_TOLERANCE = 1e-12;

/// Parameters of a displaced squeezed thermal state (hbar = 1 units).
///
/// `u` squeezes position by e^u and momentum by e^-u. `kappa` = tanh(w / 2kT)
/// lies in (0, 1]; kappa = 1 is zero temperature.
struct StateParams {
    double u = 0;
    double kappa = 1;
    double q0 = 0;
    double p0 = 0;
};

/// A single-mode Gaussian state with a diagonal variance matrix.
///
/// Holds the phase space center (q0, p0) and the quadrature spreads
/// (dq, dp). Always satisfies dq > 0, dp > 0, dq * dp >= 1/2.
struct GaussianState {
    double q0;
    double p0;
    double dq;
    double dp;

    bool operator==(const GaussianState &other) const = default;
};

/// Second moments (dq^2, dp^2, cov(q, p)).
///
/// The covariance is zero for every state this library produces; it is kept
/// so the general uncertainty condition can be checked.
struct VarianceMatrix {
    double vqq;
    double vpp;
    double vqp = 0;

    double det() const {
        return vqq * vpp - vqp * vqp;
    }
    bool operator==(const VarianceMatrix &other) const = default;
};

/// Univariate normal density N(mean, variance).
struct Gaussian1D {
    double mean;
    double variance;

    double stddev() const;
    double pdf(double x) const;
    bool operator==(const Gaussian1D &other) const = default;
};

/// Builds the state with G = S^T (kappa I) S, S = diag(e^-u, e^u), displaced to (q0, p0).
///
/// Throws InvalidParameter for kappa outside (0, 1] or non-finite input.
GaussianState make_state(const StateParams &params);

/// Builds a state directly from its moments, validating the invariants.
///
/// Throws InvalidParameter if a spread is non-positive or the uncertainty
/// product falls below 1/2.
GaussianState state_from_moments(double q0, double p0, double dq, double dp);

VarianceMatrix variance_matrix(const GaussianState &state);

/// True iff V + (i/2) beta is positive semidefinite, i.e. vqq > 0, vpp > 0 and
/// det(V) >= 1/4 (within UNCERTAINTY_TOLERANCE).
bool uncertainty_ok(const VarianceMatrix &v);

/// Wigner quasiprobability W(q, p) = sqrt|G| / pi * exp(-xi^T G xi), xi = (q - q0, p - p0).
double wigner_density(const GaussianState &state, double q, double p);

Gaussian1D marginal_q(const GaussianState &state);
Gaussian1D marginal_p(const GaussianState &state);

/// Phase space translation by (dq0, dp0). Spreads are untouched.
GaussianState displace(const GaussianState &state, double dq0, double dp0);

std::ostream &operator<<(std::ostream &out, const GaussianState &state);
std::ostream &operator<<(std::ostream &out, const Gaussian1D &density);

}  // namespace weakgauss

#endif
