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

#ifndef _WEAKGAUSS_PROTOCOL_H
#define _WEAKGAUSS_PROTOCOL_H

#include <cstddef>
#include <string_view>
#include <vector>

#include "weakgauss/gaussian_state.h"
#include "weakgauss/measurement.h"
#include "weakgauss/rng.h"

namespace weakgauss {

enum class Scheme {
    weak_sequential,
    projective_baseline,
};

std::string_view scheme_name(Scheme scheme);

/// Readings from one pass of the two-arm sequential protocol.
///
/// Arm 1 contributes (weak_q[i], strong_p[i]) per member, arm 2
/// (weak_p[i], strong_q[i]).
struct ReadingSet {
    std::vector<double> weak_q;
    std::vector<double> strong_p;
    std::vector<double> weak_p;
    std::vector<double> strong_q;

    void clear();
    bool operator==(const ReadingSet &other) const = default;
};

/// Which arm is simulated first. Only the order in which random numbers are
/// consumed changes; estimator distributions do not.
enum class ArmOrder {
    q_first,
    p_first,
};

/// Splits an ensemble of n copies in two halves: weak q then projective p on
/// the first, weak p then projective q on the second. Each copy is measured
/// twice and discarded.
///
/// Throws InsufficientEnsemble for n < 2 or odd n.
ReadingSet run_weak_protocol(
    const GaussianState &state, size_t n, const Meter &meter, Rng &rng, ArmOrder order = ArmOrder::q_first);

/// Same as above, writing into `out` so repeated trials can reuse its storage.
void run_weak_protocol_into(
    const GaussianState &state,
    size_t n,
    const Meter &meter,
    Rng &rng,
    ReadingSet &out,
    ArmOrder order = ArmOrder::q_first);

struct EstimatorOptions {
    /// Subtract the known meter noise from the pooled variances (floored at 0).
    bool deconvolve = true;
    /// Weight the two channels of each quadrature by their inverse expected
    /// variance when forming the centers. Off reproduces the plain pooled mean.
    bool inverse_variance_weighting = false;
};

/// Sample counts that went into an estimate. The projective baseline fills
/// only the strong_* slots.
struct ChannelCounts {
    size_t weak_q = 0;
    size_t strong_q = 0;
    size_t weak_p = 0;
    size_t strong_p = 0;

    bool operator==(const ChannelCounts &other) const = default;
};

struct EstimationResult {
    double q0_est;
    double p0_est;
    double dq_est;
    double dp_est;
    Scheme scheme;
    ChannelCounts n_used;
};

/// Center and spread estimates from a ReadingSet.
///
/// Centers are means over both channels of a quadrature. Spreads come from
/// the pooled sample variance (n-1 per channel); with deconvolution the
/// sample-weighted meter noise (dqm^2 for pointer readings, dpm^2 for the
/// projective readings on disturbed copies) is subtracted and the result is
/// floored at zero.
///
/// Throws InsufficientData if a channel is empty or a quadrature has fewer
/// than one degree of freedom for its variance.
EstimationResult estimate_from_readings(const ReadingSet &readings, const Meter &meter, const EstimatorOptions &options = {});

/// Projective-only estimate: n/2 q draws and n/2 p draws on fresh copies,
/// sample means and sample standard deviations (n-1 denominator).
///
/// Throws InsufficientEnsemble for n < 4 or odd n.
EstimationResult run_projective_baseline(const GaussianState &state, size_t n, Rng &rng);

struct DistanceMeasures {
    double d1;
    double d2;
};

enum class SpreadDistanceForm {
    /// (dq - dq_est)^2 + (dp - dp_est)^2
    matched,
    /// (dq - dq_est)^2 + (dq - dp_est)^2, kept for comparison with published curves.
    printed,
};

/// Squared center error d1 and squared spread error d2.
DistanceMeasures distances(
    const GaussianState &truth, const EstimationResult &est, SpreadDistanceForm form = SpreadDistanceForm::matched);

}  // namespace weakgauss

#endif
