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

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "weakgauss/error.h"

using namespace weakgauss;

std::string_view weakgauss::scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::weak_sequential:
            return "weak_sequential";
        case Scheme::projective_baseline:
            return "projective_baseline";
    }
    return "unknown";
}

void ReadingSet::clear() {
    weak_q.clear();
    strong_p.clear();
    weak_p.clear();
    strong_q.clear();
}

namespace {

struct ChannelStats {
    size_t count = 0;
    double sum = 0;
    double sum_sq_dev = 0;

    double mean() const {
        return sum / static_cast<double>(count);
    }
};

// Two-pass mean and sum of squared deviations; readings can sit far from zero
// relative to their spread, which ruins the one-pass formula.
ChannelStats channel_stats(std::span<const double> values) {
    ChannelStats s;
    s.count = values.size();
    for (double v : values) {
        s.sum += v;
    }
    if (s.count == 0) {
        return s;
    }
    double m = s.mean();
    for (double v : values) {
        double d = v - m;
        s.sum_sq_dev += d * d;
    }
    return s;
}

struct QuadratureEstimate {
    double center;
    double spread;
};

QuadratureEstimate estimate_quadrature(
    std::span<const double> pointer,
    std::span<const double> disturbed,
    double pointer_noise,
    double disturbance_noise,
    const EstimatorOptions &options,
    const char *name) {
    ChannelStats a = channel_stats(pointer);
    ChannelStats b = channel_stats(disturbed);
    if (a.count == 0 || b.count == 0) {
        throw InsufficientData(std::string("empty reading channel for ") + name);
    }
    size_t dof = a.count + b.count - 2;
    if (dof == 0) {
        throw InsufficientData(std::string("need at least three readings of ") + name + " to estimate its spread");
    }

    double na = static_cast<double>(a.count);
    double nb = static_cast<double>(b.count);
    double variance = (a.sum_sq_dev + b.sum_sq_dev) / static_cast<double>(dof);
    if (options.deconvolve) {
        double added = (na * pointer_noise + nb * disturbance_noise) / (na + nb);
        variance = std::max(variance - added, 0.0);
    }

    double center;
    if (options.inverse_variance_weighting) {
        // The intrinsic part of the weights uses the deconvolved estimate even
        // when the reported spread is the raw one.
        double intrinsic = variance;
        if (!options.deconvolve) {
            double added = (na * pointer_noise + nb * disturbance_noise) / (na + nb);
            intrinsic = std::max(variance - added, 0.0);
        }
        double wa = 1 / (intrinsic + pointer_noise);
        double wb = 1 / (intrinsic + disturbance_noise);
        center = (wa * a.sum + wb * b.sum) / (wa * na + wb * nb);
    } else {
        center = (a.sum + b.sum) / (na + nb);
    }
    return {center, std::sqrt(variance)};
}

void check_protocol_size(size_t n, size_t minimum, const char *what) {
    if (n < minimum) {
        throw InsufficientEnsemble(
            std::string(what) + " needs an ensemble of at least " + std::to_string(minimum) + " copies, got " +
            std::to_string(n));
    }
    if (n % 2 != 0) {
        throw InsufficientEnsemble(std::string(what) + " splits the ensemble in halves; got odd size " + std::to_string(n));
    }
}

}  // namespace

void weakgauss::run_weak_protocol_into(
    const GaussianState &state, size_t n, const Meter &meter, Rng &rng, ReadingSet &out, ArmOrder order) {
    check_protocol_size(n, 2, "the weak sequential protocol");
    size_t half = n / 2;
    out.clear();

    auto arm_q = [&]() {
        Gaussian1D pointer = weak_q_reading_density(state, meter);
        Gaussian1D second = post_weak_q_projective_p_density(state, meter);
        for (size_t k = 0; k < half; k++) {
            out.weak_q.push_back(sample(pointer, rng));
            out.strong_p.push_back(sample(second, rng));
        }
    };
    auto arm_p = [&]() {
        Gaussian1D pointer = weak_p_reading_density(state, meter);
        Gaussian1D second = post_weak_p_projective_q_density(state, meter);
        for (size_t k = 0; k < half; k++) {
            out.weak_p.push_back(sample(pointer, rng));
            out.strong_q.push_back(sample(second, rng));
        }
    };
    if (order == ArmOrder::q_first) {
        arm_q();
        arm_p();
    } else {
        arm_p();
        arm_q();
    }
}

ReadingSet weakgauss::run_weak_protocol(
    const GaussianState &state, size_t n, const Meter &meter, Rng &rng, ArmOrder order) {
    ReadingSet out;
    run_weak_protocol_into(state, n, meter, rng, out, order);
    return out;
}

EstimationResult weakgauss::estimate_from_readings(
    const ReadingSet &readings, const Meter &meter, const EstimatorOptions &options) {
    double qm2 = meter.dqm() * meter.dqm();
    double pm2 = meter.dpm() * meter.dpm();
    QuadratureEstimate q = estimate_quadrature(readings.weak_q, readings.strong_q, qm2, pm2, options, "q");
    QuadratureEstimate p = estimate_quadrature(readings.weak_p, readings.strong_p, qm2, pm2, options, "p");
    return {
        q.center,
        p.center,
        q.spread,
        p.spread,
        Scheme::weak_sequential,
        {readings.weak_q.size(), readings.strong_q.size(), readings.weak_p.size(), readings.strong_p.size()},
    };
}

EstimationResult weakgauss::run_projective_baseline(const GaussianState &state, size_t n, Rng &rng) {
    check_protocol_size(n, 4, "the projective baseline");
    size_t half = n / 2;

    auto draw = [&](const Gaussian1D &density) {
        double values[64];
        std::vector<double> heap;
        std::span<double> buf;
        if (half <= std::size(values)) {
            buf = std::span<double>(values, half);
        } else {
            heap.resize(half);
            buf = heap;
        }
        for (double &v : buf) {
            v = sample(density, rng);
        }
        ChannelStats s = channel_stats(buf);
        return QuadratureEstimate{s.mean(), std::sqrt(s.sum_sq_dev / static_cast<double>(half - 1))};
    };

    QuadratureEstimate q = draw(projective_q_density(state));
    QuadratureEstimate p = draw(projective_p_density(state));
    return {q.center, p.center, q.spread, p.spread, Scheme::projective_baseline, {0, half, 0, half}};
}

DistanceMeasures weakgauss::distances(const GaussianState &truth, const EstimationResult &est, SpreadDistanceForm form) {
    double eq = truth.q0 - est.q0_est;
    double ep = truth.p0 - est.p0_est;
    double sq = truth.dq - est.dq_est;
    double sp = (form == SpreadDistanceForm::matched ? truth.dp : truth.dq) - est.dp_est;
    return {eq * eq + ep * ep, sq * sq + sp * sp};
}
