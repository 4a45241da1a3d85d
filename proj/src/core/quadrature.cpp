// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace mtcap {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
// (QUADPACK abscissae and weights).
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWeightsKronrod[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWeightsGauss[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = kWeightsKronrod[7] * f(center);
    double gauss = kWeightsGauss[3] * f(center);
    for (int i = 0; i < 7; ++i) {
        const double lo = f(center - half * kNodes[i]);
        const double hi = f(center + half * kNodes[i]);
        kronrod += kWeightsKronrod[i] * (lo + hi);
        if (i % 2 == 1) gauss += kWeightsGauss[i / 2] * (lo + hi);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * half;
    p.error = std::abs((kronrod - gauss) * half);
    return p;
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                const QuadratureOptions& opts) {
    std::vector<Panel> panels;
    panels.push_back(eval_panel(f, a, b));
    while (true) {
        double total = 0.0, err = 0.0;
        for (const Panel& p : panels) {
            total += p.value;
            err += p.error;
        }
        if (err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) return total;
        if (int(panels.size()) >= opts.max_panels)
            throw_numeric("quadrature did not converge within the panel budget");
        auto worst = std::max_element(
            panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.error < y.error; });
        const double lo = worst->a, hi = worst->b, mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi))
            throw_numeric("quadrature interval collapsed before reaching tolerance");
        *worst = eval_panel(f, lo, mid);
        panels.push_back(eval_panel(f, mid, hi));
    }
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (!(b > a)) return 0.0;
    return adaptive(f, a, b, opts);
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const QuadratureOptions& opts) {
    auto mapped = [&f, a](double u) {
        const double one_minus = 1.0 - u;
        const double t = a + u / one_minus;
        return f(t) / (one_minus * one_minus);
    };
    return adaptive(mapped, 0.0, 1.0, opts);
}

} // namespace mtcap
