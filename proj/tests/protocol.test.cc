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

#include "weakgauss/protocol.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "weakgauss/error.h"

using namespace weakgauss;

namespace {

const GaussianState COHERENT = make_state({0, 1, 0, 0});

// Expected d1 from the variance of a pooled mean: each quadrature mean
// averages n/2 draws with intrinsic variance plus n/2 with meter noise.
double expected_d1_weak(const GaussianState &s, const Meter &m, size_t n) {
    double vq = s.dq * s.dq, vp = s.dp * s.dp;
    double half = static_cast<double>(n) / 2;
    double var_q = half * (vq + m.dqm() * m.dqm()) + half * (vq + m.dpm() * m.dpm());
    double var_p = half * (vp + m.dqm() * m.dqm()) + half * (vp + m.dpm() * m.dpm());
    return (var_q + var_p) / (static_cast<double>(n) * static_cast<double>(n));
}

double expected_d1_proj(const GaussianState &s, size_t n) {
    double half = static_cast<double>(n) / 2;
    return (s.dq * s.dq + s.dp * s.dp) / half;
}

}  // namespace

TEST(run_weak_protocol, reading_counts) {
    Rng rng(1);
    ReadingSet r = run_weak_protocol(COHERENT, 6, make_meter(1), rng);
    ASSERT_EQ(r.weak_q.size(), 3u);
    ASSERT_EQ(r.strong_p.size(), 3u);
    ASSERT_EQ(r.weak_p.size(), 3u);
    ASSERT_EQ(r.strong_q.size(), 3u);

    r = run_weak_protocol(COHERENT, 20, make_meter(0.3), rng);
    ASSERT_EQ(r.weak_q.size(), 10u);
    ASSERT_EQ(r.strong_q.size(), 10u);
}

TEST(run_weak_protocol, rejects_bad_sizes) {
    Rng rng(1);
    Meter m = make_meter(1);
    ASSERT_THROW(run_weak_protocol(COHERENT, 0, m, rng), InsufficientEnsemble);
    ASSERT_THROW(run_weak_protocol(COHERENT, 1, m, rng), InsufficientEnsemble);
    ASSERT_THROW(run_weak_protocol(COHERENT, 7, m, rng), InsufficientEnsemble);
    ASSERT_NO_THROW(run_weak_protocol(COHERENT, 2, m, rng));
}

TEST(run_weak_protocol, deterministic) {
    Rng a(99), b(99);
    Meter m = make_meter(1);
    ReadingSet ra = run_weak_protocol(COHERENT, 4, m, a);
    ReadingSet rb = run_weak_protocol(COHERENT, 4, m, b);
    ASSERT_EQ(ra, rb);

    ReadingSet reused{{9}, {9}, {9}, {9}};
    Rng c(99);
    run_weak_protocol_into(COHERENT, 4, m, c, reused);
    ASSERT_EQ(reused, ra);
}

TEST(run_weak_protocol, very_weak_meter_limit) {
    Rng rng(3);
    GaussianState s = make_state({0.5, 1, 0, 0});
    ReadingSet r = run_weak_protocol(s, 40000, make_meter(1e3), rng);
    auto weak = oracle::moments(r.weak_q);
    auto clean = oracle::moments(r.strong_p);
    ASSERT_GT(weak.variance, 1e5);
    ASSERT_NEAR(clean.variance, s.dp * s.dp, 0.05 * s.dp * s.dp);
}

TEST(estimate_from_readings, zero_variance_input) {
    ReadingSet r{{1.5, 1.5, 1.5}, {-2, -2, -2}, {-2, -2, -2}, {1.5, 1.5, 1.5}};
    for (bool deconvolve : {true, false}) {
        EstimationResult e = estimate_from_readings(r, make_meter(1), {deconvolve, false});
        ASSERT_EQ(e.q0_est, 1.5);
        ASSERT_EQ(e.p0_est, -2);
        ASSERT_EQ(e.dq_est, 0);
        ASSERT_EQ(e.dp_est, 0);
        ASSERT_EQ(e.scheme, Scheme::weak_sequential);
        ASSERT_EQ(e.n_used, (ChannelCounts{3, 3, 3, 3}));
    }
}

TEST(estimate_from_readings, pooled_arithmetic) {
    // q channels: {0, 2} and {1, 3, 5}; SS = 2 + 8, dof = 3.
    ReadingSet r{{0, 2}, {0, 0}, {0, 0}, {1, 3, 5}};
    EstimationResult raw = estimate_from_readings(r, make_meter(1), {false, false});
    ASSERT_DOUBLE_EQ(raw.q0_est, 11.0 / 5);
    ASSERT_DOUBLE_EQ(raw.dq_est * raw.dq_est, 10.0 / 3);

    EstimationResult dec = estimate_from_readings(r, make_meter(1), {true, false});
    double added = (2 * 1.0 + 3 * 0.25) / 5;
    ASSERT_DOUBLE_EQ(dec.dq_est * dec.dq_est, 10.0 / 3 - added);
    ASSERT_EQ(dec.q0_est, raw.q0_est);
}

TEST(estimate_from_readings, weighting) {
    ReadingSet r{{0, 2}, {1, -1}, {4, 0}, {1, 3, 5}};
    // Equal pointer and disturbance noise: weights coincide, so the weighted
    // center is the plain pooled mean.
    Meter balanced = make_meter(std::sqrt(0.5));
    EstimationResult plain = estimate_from_readings(r, balanced, {true, false});
    EstimationResult weighted = estimate_from_readings(r, balanced, {true, true});
    ASSERT_NEAR(weighted.q0_est, plain.q0_est, 1e-14);
    ASSERT_NEAR(weighted.p0_est, plain.p0_est, 1e-14);

    // Unbalanced meter: recompute the q center by hand.
    Meter m = make_meter(2);
    EstimationResult w = estimate_from_readings(r, m, {true, true});
    double ss = 2 + 8;
    double intrinsic = std::max(ss / 3 - (2 * 4.0 + 3 * 0.0625) / 5, 0.0);
    double wa = 1 / (intrinsic + 4.0), wb = 1 / (intrinsic + 0.0625);
    ASSERT_NEAR(w.q0_est, (wa * 2 + wb * 9) / (2 * wa + 3 * wb), 1e-14);
    ASSERT_EQ(w.dq_est, estimate_from_readings(r, m, {true, false}).dq_est);
}

TEST(estimate_from_readings, large_sample_consistency) {
    // Channel variances for a coherent state behind a dqm = 1 meter:
    // pointer 0.5 + 1, disturbed 0.5 + 0.25.
    Rng rng(11);
    const size_t n = 10000;
    ReadingSet r;
    for (size_t k = 0; k < n; k++) {
        r.weak_q.push_back(std::sqrt(1.5) * rng.normal());
        r.strong_p.push_back(std::sqrt(0.75) * rng.normal());
        r.weak_p.push_back(std::sqrt(1.5) * rng.normal());
        r.strong_q.push_back(std::sqrt(0.75) * rng.normal());
    }
    Meter m = make_meter(1);
    EstimationResult e = estimate_from_readings(r, m, {true, false});
    double se_center = std::sqrt(2.25 / (2.0 * n * 2.0 * n) * n);
    ASSERT_NEAR(e.q0_est, 0, 4 * se_center);
    ASSERT_NEAR(e.p0_est, 0, 4 * se_center);
    ASSERT_NEAR(e.dq_est, std::sqrt(0.5), 0.05 * std::sqrt(0.5));
    ASSERT_NEAR(e.dp_est, std::sqrt(0.5), 0.05 * std::sqrt(0.5));

    EstimationResult raw = estimate_from_readings(r, m, {false, false});
    ASSERT_NEAR(raw.dq_est * raw.dq_est, 1.125, 0.03 * 1.125);
    ASSERT_NEAR(raw.dp_est * raw.dp_est, 1.125, 0.03 * 1.125);
}

TEST(estimate_from_readings, insufficient_data) {
    Meter m = make_meter(1);
    ASSERT_THROW(estimate_from_readings({{}, {1}, {1}, {1}}, m), InsufficientData);
    ASSERT_THROW(estimate_from_readings({{1}, {1}, {1}, {}}, m), InsufficientData);
    // One reading per channel leaves no degrees of freedom for the spread.
    ASSERT_THROW(estimate_from_readings({{1}, {2}, {3}, {4}}, m), InsufficientData);
    ASSERT_NO_THROW(estimate_from_readings({{1, 2}, {2}, {3, 4}, {4}}, m));
}

TEST(estimate_from_readings, spreads_never_negative) {
    Rng rng(5);
    Meter m = make_meter(0.4);
    ReadingSet r;
    for (int k = 0; k < 2000; k++) {
        run_weak_protocol_into(COHERENT, 6, m, rng, r);
        EstimationResult e = estimate_from_readings(r, m);
        ASSERT_GE(e.dq_est, 0);
        ASSERT_GE(e.dp_est, 0);
    }
}

TEST(weak_scheme, centers_unbiased) {
    Rng rng(77);
    GaussianState s = make_state({0.6, 0.9, 1.2, -2.1});
    Meter m = make_meter(1 / 1.1);
    const int reps = 100000;
    const size_t n = 6;
    double sq = 0, sp = 0;
    ReadingSet r;
    for (int k = 0; k < reps; k++) {
        run_weak_protocol_into(s, n, m, rng, r);
        EstimationResult e = estimate_from_readings(r, m);
        sq += e.q0_est;
        sp += e.p0_est;
    }
    double vq = s.dq * s.dq, vp = s.dp * s.dp;
    double noise = m.dqm() * m.dqm() + m.dpm() * m.dpm();
    double se_q = std::sqrt((2 * vq + noise) / (2.0 * n) / reps);
    double se_p = std::sqrt((2 * vp + noise) / (2.0 * n) / reps);
    ASSERT_NEAR(sq / reps, s.q0, 3 * se_q);
    ASSERT_NEAR(sp / reps, s.p0, 3 * se_p);
}

TEST(weak_scheme, d1_law) {
    struct Case {
        StateParams params;
        size_t n;
        double inv_dqm;
    };
    const Case cases[] = {
        {{0, 1, 0, 0}, 20, std::sqrt(2.0)},
        {{1, 1, 0.5, -1}, 6, 0.4},
        {{-0.7, 0.85, 2, 2}, 10, 2.5},
    };
    Rng rng(2025);
    ReadingSet r;
    for (const auto &c : cases) {
        GaussianState s = make_state(c.params);
        Meter m = make_meter(1 / c.inv_dqm);
        const int trials = 100000;
        double acc = 0;
        for (int k = 0; k < trials; k++) {
            run_weak_protocol_into(s, c.n, m, rng, r);
            acc += distances(s, estimate_from_readings(r, m)).d1;
        }
        double expected = expected_d1_weak(s, m, c.n);
        ASSERT_NEAR(acc / trials, expected, 0.02 * expected) << "n=" << c.n << " inv_dqm=" << c.inv_dqm;
    }
}

TEST(weak_scheme, optimum_beats_projective_for_squeezed_states) {
    Rng rng(31);
    GaussianState s = make_state({1, 1, 0, 0});
    Meter m = make_meter(std::sqrt(0.5));
    const int trials = 20000;
    double weak = 0, proj = 0;
    ReadingSet r;
    for (int k = 0; k < trials; k++) {
        run_weak_protocol_into(s, 10, m, rng, r);
        weak += distances(s, estimate_from_readings(r, m)).d1;
        proj += distances(s, run_projective_baseline(s, 10, rng)).d1;
    }
    ASSERT_LT(weak / trials, proj / trials);
}

TEST(weak_scheme, arm_order_does_not_matter) {
    GaussianState s = make_state({0.8, 1, 0, 0});
    Meter m = make_meter(0.6);
    const int reps = 40000;
    auto collect = [&](ArmOrder order, uint64_t seed) {
        Rng rng(seed);
        std::vector<double> q0, dq;
        ReadingSet r;
        for (int k = 0; k < reps; k++) {
            run_weak_protocol_into(s, 8, m, rng, r, order);
            EstimationResult e = estimate_from_readings(r, m);
            q0.push_back(e.q0_est);
            dq.push_back(e.dq_est);
        }
        return std::pair{oracle::moments(q0), oracle::moments(dq)};
    };
    auto [q_a, dq_a] = collect(ArmOrder::q_first, 1);
    auto [q_b, dq_b] = collect(ArmOrder::p_first, 2);
    auto close = [&](const oracle::SampleMoments &a, const oracle::SampleMoments &b) {
        double se = std::sqrt((a.variance + b.variance) / reps);
        EXPECT_NEAR(a.mean, b.mean, 4 * se);
        EXPECT_NEAR(a.variance, b.variance, 0.05 * a.variance);
    };
    close(q_a, q_b);
    close(dq_a, dq_b);
}

TEST(run_projective_baseline, rejects_bad_sizes) {
    Rng rng(1);
    ASSERT_THROW(run_projective_baseline(COHERENT, 2, rng), InsufficientEnsemble);
    ASSERT_THROW(run_projective_baseline(COHERENT, 3, rng), InsufficientEnsemble);
    ASSERT_THROW(run_projective_baseline(COHERENT, 9, rng), InsufficientEnsemble);
    EstimationResult e = run_projective_baseline(COHERENT, 4, rng);
    ASSERT_EQ(e.scheme, Scheme::projective_baseline);
    ASSERT_EQ(e.n_used, (ChannelCounts{0, 2, 0, 2}));
}

TEST(run_projective_baseline, deterministic) {
    Rng a(8), b(8);
    EstimationResult x = run_projective_baseline(COHERENT, 200, a);
    EstimationResult y = run_projective_baseline(COHERENT, 200, b);
    ASSERT_EQ(x.q0_est, y.q0_est);
    ASSERT_EQ(x.dp_est, y.dp_est);
}

TEST(run_projective_baseline, clt_and_d1_law) {
    Rng rng(404);
    const int reps = 100000;
    const size_t n = 20;
    double sum_q = 0, d1 = 0;
    for (int k = 0; k < reps; k++) {
        EstimationResult e = run_projective_baseline(COHERENT, n, rng);
        sum_q += e.q0_est;
        d1 += distances(COHERENT, e).d1;
    }
    ASSERT_NEAR(sum_q / reps, 0, 3 * std::sqrt(0.5 / (10.0 * reps)));
    ASSERT_NEAR(d1 / reps, 0.1, 0.002);

    GaussianState s = make_state({-1, 0.8, 1, 1});
    d1 = 0;
    for (int k = 0; k < reps; k++) {
        d1 += distances(s, run_projective_baseline(s, 8, rng)).d1;
    }
    double expected = expected_d1_proj(s, 8);
    ASSERT_NEAR(d1 / reps, expected, 0.02 * expected);
}

TEST(run_projective_baseline, large_ensemble_spreads) {
    Rng rng(6);
    GaussianState s = make_state({0.3, 0.9, -1, 2});
    EstimationResult e = run_projective_baseline(s, 200000, rng);
    ASSERT_NEAR(e.dq_est, s.dq, 0.01 * s.dq);
    ASSERT_NEAR(e.dp_est, s.dp, 0.01 * s.dp);
}

TEST(distances, examples) {
    EstimationResult exact{0, 0, COHERENT.dq, COHERENT.dp, Scheme::weak_sequential, {}};
    DistanceMeasures d = distances(COHERENT, exact);
    ASSERT_EQ(d.d1, 0);
    ASSERT_EQ(d.d2, 0);

    EstimationResult shifted{1, 1, COHERENT.dq, COHERENT.dp, Scheme::weak_sequential, {}};
    d = distances(COHERENT, shifted);
    ASSERT_EQ(d.d1, 2);
    ASSERT_EQ(d.d2, 0);

    EstimationResult off{0.1, -0.2, 0.8071, 0.6071, Scheme::weak_sequential, {}};
    d = distances(COHERENT, off);
    ASSERT_NEAR(d.d1, 0.05, 1e-12);
    ASSERT_NEAR(d.d2, 0.02, 1e-8);
}

TEST(distances, printed_form) {
    GaussianState s = make_state({1, 1, 0, 0});
    EstimationResult e{0, 0, s.dq, s.dp, Scheme::weak_sequential, {}};
    ASSERT_EQ(distances(s, e, SpreadDistanceForm::matched).d2, 0);
    double gap = s.dq - s.dp;
    ASSERT_NEAR(distances(s, e, SpreadDistanceForm::printed).d2, gap * gap, 1e-14);
    // The two forms coincide on symmetric states.
    e = {0, 0, 0.5, 0.9, Scheme::weak_sequential, {}};
    ASSERT_EQ(
        distances(COHERENT, e, SpreadDistanceForm::printed).d2, distances(COHERENT, e, SpreadDistanceForm::matched).d2);
}

TEST(scheme_name, names) {
    ASSERT_EQ(scheme_name(Scheme::weak_sequential), "weak_sequential");
    ASSERT_EQ(scheme_name(Scheme::projective_baseline), "projective_baseline");
}
