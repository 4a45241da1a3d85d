// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace mtcap {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_panels = 8000;
};

// Adaptive Gauss-Kronrod 7-15 integration on [a, b].  Panels are refined
// worst-error-first until the summed error estimate meets the tolerance.
// Throws Error(numeric) when the panel budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// Integral over [a, +inf) via the rational map t = a + u/(1-u).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const QuadratureOptions& opts = {});

} // namespace mtcap
