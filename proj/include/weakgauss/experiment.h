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

#ifndef _WEAKGAUSS_EXPERIMENT_H
#define _WEAKGAUSS_EXPERIMENT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "weakgauss/gaussian_state.h"
#include "weakgauss/protocol.h"
#include "weakgauss/rng.h"

namespace weakgauss {

struct Interval {
    double lo;
    double hi;

    bool operator==(const Interval &other) const = default;
};

/// How per-run results are folded into one number per state.
enum class Averaging {
    /// d1/d2 per run, averaged over runs.
    distances,
    /// Estimates averaged over runs, then one d1/d2 per state.
    estimates,
};

/// `count` points geometrically spaced over [lo, hi], endpoints included.
std::vector<double> geometric_grid(double lo, double hi, size_t count);

/// 24 points over [0.1, 3.0]; brackets the d1 optimum at 1/dqm = sqrt(2).
std::vector<double> default_inv_dqm_grid();

struct ExperimentConfig {
    double kappa = 1;
    size_t n_states = 100;
    size_t n_runs = 1000;
    std::vector<size_t> ensemble_sizes{20, 10, 8, 6};
    std::vector<double> inv_dqm_grid = default_inv_dqm_grid();
    Interval u_range{-1, 1};
    Interval center_range{-3, 3};
    uint64_t master_seed = 1;
    bool deconvolve = true;
    bool weighting = false;
    Averaging averaging = Averaging::distances;
    SpreadDistanceForm d2_form = SpreadDistanceForm::matched;

    EstimatorOptions estimator_options() const {
        return {deconvolve, weighting};
    }
    bool operator==(const ExperimentConfig &other) const = default;
};

/// Smallest and largest accepted grid values. Outside this range the meter
/// variances overflow the useful dynamic range of the estimators.
constexpr double MIN_INV_DQM = 1e-3;
constexpr double MAX_INV_DQM = 1e3;

/// Throws ConfigError naming the first offending field.
void validate_config(const ExperimentConfig &config);

/// Draws u ~ U(u_range), q0, p0 ~ U(center_range) (in that order) and builds
/// the state. Throws InvalidParameter for kappa outside (0, 1].
GaussianState random_state(
    double kappa, Rng &rng, Interval u_range = {-1, 1}, Interval center_range = {-3, 3});

struct TrialOptions {
    EstimatorOptions estimator;
    SpreadDistanceForm d2_form = SpreadDistanceForm::matched;
};

struct TrialOutcome {
    EstimationResult weak_estimate;
    EstimationResult proj_estimate;
    DistanceMeasures weak;
    DistanceMeasures proj;
};

/// One weak-sequential and one projective estimate of the same state, each
/// on its own substream split off `rng`.
TrialOutcome run_trial(
    const GaussianState &state, size_t n, double inv_dqm, Rng &rng, const TrialOptions &options = {});

/// Same as run_trial with explicit streams for the two schemes.
TrialOutcome run_trial_streams(
    const GaussianState &state,
    size_t n,
    double inv_dqm,
    Rng &weak_rng,
    Rng &proj_rng,
    const TrialOptions &options,
    ReadingSet &scratch);

struct SweepPoint {
    double inv_dqm;
    double d1_weak_mean = 0;
    double d2_weak_mean = 0;
    double d1_proj_mean = 0;
    double d2_proj_mean = 0;
    double d1_weak_se = 0;
    double d2_weak_se = 0;
    double d1_proj_se = 0;
    double d2_proj_se = 0;
};

struct SweepCurve {
    size_t ensemble_size;
    std::vector<SweepPoint> points;
};

struct SweepResult {
    ExperimentConfig config;
    bool has_weak = true;
    bool has_proj = true;
    /// Same order as config.ensemble_sizes.
    std::vector<SweepCurve> curves;

    const SweepCurve &curve(size_t ensemble_size) const;
};

struct SweepOptions {
    /// 0 picks threads from WEAKGAUSS_THREADS, else hardware concurrency.
    size_t threads = 0;
    bool weak = true;
    bool proj = true;
};

/// Worker count implied by the environment (WEAKGAUSS_THREADS) or hardware.
size_t default_thread_count();

/// Monte Carlo sweep: for every ensemble size and grid value, n_runs trials
/// per state averaged per state, then mean and standard error across the
/// n_states states.
///
/// Trial streams are keyed by (master_seed, kappa, ensemble size, grid value,
/// state index, run index, scheme), states by (master_seed, kappa, state
/// index), so results are bit-identical for any thread count and for any
/// subset of sizes or grid values.
SweepResult run_sweep(const ExperimentConfig &config, const SweepOptions &options = {});

struct CrossoverInterval {
    /// Smallest and largest grid value where the weak curve is below the projective one.
    std::optional<Interval> range;
    size_t points_below = 0;
};

struct CurveSummary {
    double argmin_inv_dqm;
    double weak_min;
    double weak_min_se;
    double proj_at_min;
    double proj_at_min_se;
    /// (proj - weak_min) / proj at the weak optimum.
    double relative_advantage;
    CrossoverInterval crossover;
};

struct SummaryRow {
    double kappa;
    size_t ensemble_size;
    CurveSummary d1;
    CurveSummary d2;
};

/// Per-ensemble-size minima, crossover intervals and relative advantage.
/// Throws InvalidParameter for results with no points or missing schemes.
std::vector<SummaryRow> summarize(const SweepResult &result);

}  // namespace weakgauss

#endif
