// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace mtcap {

// Lebesgue measure of the d-dimensional unit ball, pi^(d/2) / Gamma(1 + d/2).
inline double unit_ball_volume(int d) {
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(1.0 + 0.5 * d);
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= double(n - k + i) / double(i);
    return v;
}

// Regularized upper incomplete gamma Q(m, y) = Gamma(m, y) / Gamma(m) for
// integer shape m >= 1: Q = exp(-y) * sum_{i<m} y^i / i!.
inline double regularized_gamma_q(int m, double y) {
    if (y <= 0.0) return 1.0;
    double term = 1.0;
    double sum = 1.0;
    for (int i = 1; i < m; ++i) {
        term *= y / double(i);
        sum += term;
    }
    const double v = std::exp(-y + std::log(sum));
    return v > 1.0 ? 1.0 : v;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope * x.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit fit;
    fit.n = x.size();
    if (x.size() != y.size() || x.size() < 2) return fit;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / double(x.size());
    const double my = sy / double(y.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / double(x.size()));
    return fit;
}

} // namespace mtcap
