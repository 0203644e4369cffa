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

// Test-only reference computations. Nothing here calls into the library's
// closed forms; each oracle takes an independent route to the same number.

#ifndef _WEAKGAUSS_TESTS_ORACLES_H
#define _WEAKGAUSS_TESTS_ORACLES_H

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>

namespace weakgauss::oracle {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat2 mul(const Mat2 &a, const Mat2 &b) {
    Mat2 r{};
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++)
            for (int k = 0; k < 2; k++) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline Mat2 transpose(const Mat2 &a) {
    return {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}};
}

inline double det(const Mat2 &a) {
    return a[0][0] * a[1][1] - a[0][1] * a[1][0];
}

inline Mat2 inverse(const Mat2 &a) {
    double d = det(a);
    return {{{a[1][1] / d, -a[0][1] / d}, {-a[1][0] / d, a[0][0] / d}}};
}

/// G = S^T (kappa I) S with S = diag(e^-u, e^u).
inline Mat2 g_matrix(double u, double kappa) {
    Mat2 s{{{std::exp(-u), 0}, {0, std::exp(u)}}};
    Mat2 g0{{{kappa, 0}, {0, kappa}}};
    return mul(transpose(s), mul(g0, s));
}

/// V = G^-1 / 2 by explicit matrix inversion.
inline Mat2 variance_from_g(const Mat2 &g) {
    Mat2 inv = inverse(g);
    for (auto &row : inv)
        for (auto &x : row) x *= 0.5;
    return inv;
}

/// Sigma' = M Sigma M^T on the joint (q, q_m, p, p_m) covariance.
inline Mat4 propagate(const Mat4 &m, const Mat4 &sigma) {
    Mat4 tmp{}, out{};
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++)
            for (int k = 0; k < 4; k++) tmp[i][j] += m[i][k] * sigma[k][j];
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++)
            for (int k = 0; k < 4; k++) out[i][j] += tmp[i][k] * m[j][k];
    return out;
}

inline Mat4 product_covariance(double vq, double vqm, double vp, double vpm) {
    Mat4 s{};
    s[0][0] = vq;
    s[1][1] = vqm;
    s[2][2] = vp;
    s[3][3] = vpm;
    return s;
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)> &f, double a, double b, size_t panels) {
    if (panels % 2) panels++;
    double h = (b - a) / static_cast<double>(panels);
    double acc = f(a) + f(b);
    for (size_t k = 1; k < panels; k++) {
        acc += (k % 2 ? 4 : 2) * f(a + h * static_cast<double>(k));
    }
    return acc * h / 3;
}

inline double simpson2d(
    const std::function<double(double, double)> &f,
    double ax,
    double bx,
    double ay,
    double by,
    size_t panels) {
    return simpson(
        [&](double x) {
            return simpson(
                [&](double y) {
                    return f(x, y);
                },
                ay,
                by,
                panels);
        },
        ax,
        bx,
        panels);
}

struct SampleMoments {
    double mean;
    double variance;  // n-1 denominator
};

inline SampleMoments moments(std::span<const double> xs) {
    double n = static_cast<double>(xs.size());
    double m = 0;
    for (double x : xs) m += x;
    m /= n;
    double ss = 0;
    for (double x : xs) ss += (x - m) * (x - m);
    return {m, ss / (n - 1)};
}

}  // namespace weakgauss::oracle

#endif
