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

#include "weakgauss/experiment.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "weakgauss/error.h"
#include "weakgauss/measurement.h"

using namespace weakgauss;

namespace {

constexpr uint64_t TAG_STATE = 0x5354415445ULL;
constexpr uint64_t TAG_WEAK = 1;
constexpr uint64_t TAG_PROJ = 2;

uint64_t bits(double x) {
    return std::bit_cast<uint64_t>(x);
}

bool finite_interval(const Interval &r) {
    return std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo < r.hi;
}

struct Moments {
    double mean = 0;
    double se = 0;
};

Moments across_states(const std::vector<double> &values) {
    Moments m;
    double n = static_cast<double>(values.size());
    for (double v : values) {
        m.mean += v;
    }
    m.mean /= n;
    if (values.size() > 1) {
        double ss = 0;
        for (double v : values) {
            ss += (v - m.mean) * (v - m.mean);
        }
        m.se = std::sqrt(ss / (n - 1) / n);
    }
    return m;
}

// Per-state averages for one (ensemble size, grid value) cell.
struct StateCell {
    double d1_weak = 0;
    double d2_weak = 0;
    double d1_proj = 0;
    double d2_proj = 0;
};

struct EstimateSums {
    double q0 = 0, p0 = 0, dq = 0, dp = 0;

    void add(const EstimationResult &e) {
        q0 += e.q0_est;
        p0 += e.p0_est;
        dq += e.dq_est;
        dp += e.dp_est;
    }
    EstimationResult mean(double runs, Scheme scheme) const {
        return {q0 / runs, p0 / runs, dq / runs, dp / runs, scheme, {}};
    }
};

}  // namespace

std::vector<double> weakgauss::geometric_grid(double lo, double hi, size_t count) {
    if (!(lo > 0 && hi > lo && std::isfinite(hi)) || count < 2) {
        throw InvalidParameter("geometric grid needs 0 < lo < hi and at least two points");
    }
    std::vector<double> grid(count);
    double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
    for (size_t k = 0; k < count; k++) {
        grid[k] = lo * std::exp(ratio * static_cast<double>(k));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> weakgauss::default_inv_dqm_grid() {
    return geometric_grid(0.1, 3.0, 24);
}

void weakgauss::validate_config(const ExperimentConfig &c) {
    if (!(std::isfinite(c.kappa) && c.kappa > 0 && c.kappa <= 1)) {
        throw ConfigError("kappa must lie in (0, 1], got " + std::to_string(c.kappa), "kappa");
    }
    if (c.n_states < 1) {
        throw ConfigError("n_states must be at least 1", "n_states");
    }
    if (c.n_runs < 1) {
        throw ConfigError("n_runs must be at least 1", "n_runs");
    }
    if (c.ensemble_sizes.empty()) {
        throw ConfigError("ensemble_sizes must not be empty", "ensemble_sizes");
    }
    for (size_t n : c.ensemble_sizes) {
        if (n < 4 || n % 2 != 0) {
            throw ConfigError(
                "ensemble sizes must be even and at least 4, got " + std::to_string(n), "ensemble_sizes");
        }
    }
    for (size_t a = 0; a < c.ensemble_sizes.size(); a++) {
        for (size_t b = a + 1; b < c.ensemble_sizes.size(); b++) {
            if (c.ensemble_sizes[a] == c.ensemble_sizes[b]) {
                throw ConfigError("duplicate ensemble size " + std::to_string(c.ensemble_sizes[a]), "ensemble_sizes");
            }
        }
    }
    if (c.inv_dqm_grid.empty()) {
        throw ConfigError("inv_dqm_grid must not be empty", "inv_dqm_grid");
    }
    for (size_t k = 0; k < c.inv_dqm_grid.size(); k++) {
        double g = c.inv_dqm_grid[k];
        if (!(std::isfinite(g) && g >= MIN_INV_DQM && g <= MAX_INV_DQM)) {
            throw ConfigError("inv_dqm_grid values must lie in [1e-3, 1e3], got " + std::to_string(g), "inv_dqm_grid");
        }
        if (k > 0 && !(g > c.inv_dqm_grid[k - 1])) {
            throw ConfigError("inv_dqm_grid must be strictly increasing", "inv_dqm_grid");
        }
    }
    if (!finite_interval(c.u_range)) {
        throw ConfigError("u_range must be a finite interval with lo < hi", "u_range");
    }
    if (!finite_interval(c.center_range)) {
        throw ConfigError("center_range must be a finite interval with lo < hi", "center_range");
    }
}

GaussianState weakgauss::random_state(double kappa, Rng &rng, Interval u_range, Interval center_range) {
    if (!(std::isfinite(kappa) && kappa > 0 && kappa <= 1)) {
        throw InvalidParameter("kappa must lie in (0, 1], got " + std::to_string(kappa));
    }
    double u = rng.uniform(u_range.lo, u_range.hi);
    double q0 = rng.uniform(center_range.lo, center_range.hi);
    double p0 = rng.uniform(center_range.lo, center_range.hi);
    return make_state({u, kappa, q0, p0});
}

TrialOutcome weakgauss::run_trial_streams(
    const GaussianState &state,
    size_t n,
    double inv_dqm,
    Rng &weak_rng,
    Rng &proj_rng,
    const TrialOptions &options,
    ReadingSet &scratch) {
    if (!(std::isfinite(inv_dqm) && inv_dqm > 0)) {
        throw InvalidParameter("inverse meter spread must be positive, got " + std::to_string(inv_dqm));
    }
    Meter meter = make_meter(1 / inv_dqm);
    // The baseline has the stricter size requirement, so it runs first.
    EstimationResult proj = run_projective_baseline(state, n, proj_rng);
    run_weak_protocol_into(state, n, meter, weak_rng, scratch);
    TrialOutcome out{estimate_from_readings(scratch, meter, options.estimator), proj, {}, {}};
    out.weak = distances(state, out.weak_estimate, options.d2_form);
    out.proj = distances(state, out.proj_estimate, options.d2_form);
    return out;
}

TrialOutcome weakgauss::run_trial(
    const GaussianState &state, size_t n, double inv_dqm, Rng &rng, const TrialOptions &options) {
    uint64_t base = rng.next_u64();
    Rng weak_rng(derive_stream_seed(base, {TAG_WEAK}));
    Rng proj_rng(derive_stream_seed(base, {TAG_PROJ}));
    ReadingSet scratch;
    return run_trial_streams(state, n, inv_dqm, weak_rng, proj_rng, options, scratch);
}

const SweepCurve &SweepResult::curve(size_t ensemble_size) const {
    for (const auto &c : curves) {
        if (c.ensemble_size == ensemble_size) {
            return c;
        }
    }
    throw InvalidParameter("sweep has no curve for ensemble size " + std::to_string(ensemble_size));
}

size_t weakgauss::default_thread_count() {
    if (const char *env = std::getenv("WEAKGAUSS_THREADS")) {
        char *end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult weakgauss::run_sweep(const ExperimentConfig &config, const SweepOptions &options) {
    validate_config(config);
    if (!options.weak && !options.proj) {
        throw InvalidParameter("sweep needs at least one scheme");
    }
    const size_t n_sizes = config.ensemble_sizes.size();
    const size_t n_grid = config.inv_dqm_grid.size();
    const size_t n_states = config.n_states;
    const uint64_t kappa_key = bits(config.kappa);

    std::vector<GaussianState> states;
    states.reserve(n_states);
    for (size_t i = 0; i < n_states; i++) {
        Rng rng(derive_stream_seed(config.master_seed, {kappa_key, TAG_STATE, i}));
        states.push_back(random_state(config.kappa, rng, config.u_range, config.center_range));
    }

    const TrialOptions trial_options{config.estimator_options(), config.d2_form};
    const double runs = static_cast<double>(config.n_runs);
    const size_t n_tasks = n_sizes * n_grid * n_states;
    std::vector<StateCell> cells(n_tasks);

    auto run_cell = [&](size_t task, ReadingSet &scratch) {
        size_t i = task % n_states;
        size_t g = (task / n_states) % n_grid;
        size_t s = task / (n_states * n_grid);
        size_t n = config.ensemble_sizes[s];
        double inv_dqm = config.inv_dqm_grid[g];
        const GaussianState &state = states[i];
        Meter meter = make_meter(1 / inv_dqm);

        StateCell cell;
        EstimateSums weak_sum, proj_sum;
        for (size_t r = 0; r < config.n_runs; r++) {
            if (options.weak) {
                Rng rng(derive_stream_seed(config.master_seed, {kappa_key, n, bits(inv_dqm), i, r, TAG_WEAK}));
                run_weak_protocol_into(state, n, meter, rng, scratch);
                EstimationResult est = estimate_from_readings(scratch, meter, trial_options.estimator);
                if (config.averaging == Averaging::distances) {
                    DistanceMeasures d = distances(state, est, config.d2_form);
                    cell.d1_weak += d.d1;
                    cell.d2_weak += d.d2;
                } else {
                    weak_sum.add(est);
                }
            }
            if (options.proj) {
                Rng rng(derive_stream_seed(config.master_seed, {kappa_key, n, bits(inv_dqm), i, r, TAG_PROJ}));
                EstimationResult est = run_projective_baseline(state, n, rng);
                if (config.averaging == Averaging::distances) {
                    DistanceMeasures d = distances(state, est, config.d2_form);
                    cell.d1_proj += d.d1;
                    cell.d2_proj += d.d2;
                } else {
                    proj_sum.add(est);
                }
            }
        }
        if (config.averaging == Averaging::distances) {
            cell.d1_weak /= runs;
            cell.d2_weak /= runs;
            cell.d1_proj /= runs;
            cell.d2_proj /= runs;
        } else {
            DistanceMeasures w = distances(state, weak_sum.mean(runs, Scheme::weak_sequential), config.d2_form);
            DistanceMeasures p = distances(state, proj_sum.mean(runs, Scheme::projective_baseline), config.d2_form);
            cell = {w.d1, w.d2, p.d1, p.d2};
        }
        cells[task] = cell;
    };

    size_t threads = options.threads ? options.threads : default_thread_count();
    threads = std::min(threads, n_tasks);
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        ReadingSet scratch;
        try {
            for (size_t task = next++; task < n_tasks; task = next++) {
                run_cell(task, scratch);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = n_tasks;
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (size_t t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    SweepResult result{config, options.weak, options.proj, {}};
    std::vector<double> column(n_states);
    auto reduce = [&](size_t s, size_t g, double StateCell::*field) {
        for (size_t i = 0; i < n_states; i++) {
            column[i] = cells[(s * n_grid + g) * n_states + i].*field;
        }
        return across_states(column);
    };
    for (size_t s = 0; s < n_sizes; s++) {
        SweepCurve curve{config.ensemble_sizes[s], {}};
        for (size_t g = 0; g < n_grid; g++) {
            SweepPoint p{config.inv_dqm_grid[g]};
            if (options.weak) {
                Moments d1 = reduce(s, g, &StateCell::d1_weak);
                Moments d2 = reduce(s, g, &StateCell::d2_weak);
                p.d1_weak_mean = d1.mean;
                p.d1_weak_se = d1.se;
                p.d2_weak_mean = d2.mean;
                p.d2_weak_se = d2.se;
            }
            if (options.proj) {
                Moments d1 = reduce(s, g, &StateCell::d1_proj);
                Moments d2 = reduce(s, g, &StateCell::d2_proj);
                p.d1_proj_mean = d1.mean;
                p.d1_proj_se = d1.se;
                p.d2_proj_mean = d2.mean;
                p.d2_proj_se = d2.se;
            }
            curve.points.push_back(p);
        }
        result.curves.push_back(std::move(curve));
    }
    return result;
}

namespace {

CurveSummary summarize_curve(
    const std::vector<SweepPoint> &points,
    double SweepPoint::*weak,
    double SweepPoint::*weak_se,
    double SweepPoint::*proj,
    double SweepPoint::*proj_se) {
    size_t best = 0;
    for (size_t k = 1; k < points.size(); k++) {
        if (points[k].*weak < points[best].*weak) {
            best = k;
        }
    }
    const SweepPoint &b = points[best];
    CurveSummary s{b.inv_dqm, b.*weak, b.*weak_se, b.*proj, b.*proj_se, 0, {}};
    s.relative_advantage = b.*proj > 0 ? (b.*proj - b.*weak) / b.*proj : 0;
    for (const auto &p : points) {
        if (p.*weak < p.*proj) {
            if (!s.crossover.range) {
                s.crossover.range = Interval{p.inv_dqm, p.inv_dqm};
            }
            s.crossover.range->hi = p.inv_dqm;
            s.crossover.points_below++;
        }
    }
    return s;
}

}  // namespace

std::vector<SummaryRow> weakgauss::summarize(const SweepResult &result) {
    if (!result.has_weak || !result.has_proj) {
        throw InvalidParameter("summary compares both schemes; the sweep is missing one");
    }
    if (result.curves.empty()) {
        throw InvalidParameter("cannot summarize an empty sweep");
    }
    std::vector<SummaryRow> rows;
    for (const auto &curve : result.curves) {
        if (curve.points.empty()) {
            throw InvalidParameter("cannot summarize a sweep with an empty grid");
        }
        rows.push_back({
            result.config.kappa,
            curve.ensemble_size,
            summarize_curve(
                curve.points,
                &SweepPoint::d1_weak_mean,
                &SweepPoint::d1_weak_se,
                &SweepPoint::d1_proj_mean,
                &SweepPoint::d1_proj_se),
            summarize_curve(
                curve.points,
                &SweepPoint::d2_weak_mean,
                &SweepPoint::d2_weak_se,
                &SweepPoint::d2_proj_mean,
                &SweepPoint::d2_proj_se),
        });
    }
    std::sort(rows.begin(), rows.end(), [](const SummaryRow &a, const SummaryRow &b) {
        return a.ensemble_size < b.ensemble_size;
    });
    return rows;
}
