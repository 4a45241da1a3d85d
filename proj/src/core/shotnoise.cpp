// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "core/shotnoise.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/mathutil.hpp"
#include "core/quadrature.hpp"

namespace mtcap {
namespace {

constexpr int kMaxSeriesTerms = 400;

double upper_limit(const ShotNoiseQuery& q) {
    if (std::isinf(q.window)) return kInfiniteWindow;
    return double(q.m) * std::pow(q.window, q.alpha) / q.phi;
}

// 1 - (t/(1+t))^m without cancellation for large t.
double one_minus_ratio_pow(double t, int m) {
    return -std::expm1(double(m) * std::log1p(-1.0 / (1.0 + t)));
}

// (t/(t-1))^m - 1 for t > 1.
double ratio_pow_minus_one(double t, int m) {
    return std::expm1(-double(m) * std::log1p(-1.0 / t));
}

// Integral_T^inf t^(xi-1) (1 - (t/(1+t))^m) dt via the 1/t expansion
// 1 - (1+1/t)^-m = sum_{i>=1} (-1)^(i+1) C(m+i-1, i) t^-i.
double delta1_tail(double T, int m, double xi) {
    double coeff = 1.0;
    double sum = 0.0;
    for (int i = 1; i <= kMaxSeriesTerms; ++i) {
        coeff *= double(m + i - 1) / double(i);
        const double term =
            (i % 2 == 1 ? 1.0 : -1.0) * coeff * std::pow(T, xi - i) / (double(i) - xi);
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum) + 1e-300) return sum;
    }
    throw_numeric("tail series for Delta_1 did not converge");
}

// Integral_T^inf t^(xi-1) ((t/(t-1))^m - 1) dt via
// (1-1/t)^-m - 1 = sum_{i>=1} C(m+i-1, i) t^-i.
double delta2_tail(double T, int m, double xi) {
    double coeff = 1.0;
    double sum = 0.0;
    for (int i = 1; i <= kMaxSeriesTerms; ++i) {
        coeff *= double(m + i - 1) / double(i);
        const double term = coeff * std::pow(T, xi - i) / (double(i) - xi);
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum) + 1e-300) return sum;
    }
    throw_numeric("tail series for Delta_2 did not converge");
}

// Integral over [a, b] (b possibly infinite) of the given integrand with an
// analytic tail beyond the split point.
template <typename Integrand, typename Tail>
double bulk_plus_tail(double a, double b, double split_min, Integrand integrand, Tail tail) {
    const double split = std::max(split_min, 2.0 * a);
    if (!std::isinf(b) && b <= split) return integrate(integrand, a, b);
    double value = 0.0;
    if (a < split) {
        value += integrate(integrand, a, split);
        value += tail(split);
    } else {
        value += tail(a);
    }
    if (!std::isinf(b)) value -= tail(b);
    return value;
}

} // namespace

double delta1(const ShotNoiseQuery& q) {
    if (!(q.phi > 0.0)) throw_argument("delta1 requires phi > 0");
    if (!(q.window >= 1.0)) throw_argument("delta1 requires window >= 1");
    if (!(q.alpha > q.d)) throw_argument("delta1 requires alpha > d");
    const double xi = q.xi();
    const double a = double(q.m) / q.phi;
    const double b = upper_limit(q);
    if (b <= a) return 0.0;
    const int m = q.m;
    auto integrand = [m, xi](double t) {
        return std::pow(t, xi - 1.0) * one_minus_ratio_pow(t, m);
    };
    auto tail = [m, xi](double T) { return delta1_tail(T, m, xi); };
    const double integral = bulk_plus_tail(a, b, std::max(64.0, 8.0 * m), integrand, tail);
    return xi * std::pow(q.phi / q.m, xi) * integral;
}

double delta2(const ShotNoiseQuery& q) {
    if (!(q.phi > 0.0)) throw_argument("delta2 requires phi > 0");
    if (!(q.phi < q.m))
        throw_numeric("delta2 requires phi < m: the (1-t)^-m singularity at t = 1 "
                      "would enter the integration range");
    if (!(q.window >= 1.0)) throw_argument("delta2 requires window >= 1");
    if (!(q.alpha > q.d)) throw_argument("delta2 requires alpha > d");
    const double xi = q.xi();
    const double a = double(q.m) / q.phi;
    const double b = upper_limit(q);
    if (b <= a) return 0.0;
    const int m = q.m;
    auto integrand = [m, xi](double t) {
        return std::pow(t, xi - 1.0) * ratio_pow_minus_one(t, m);
    };
    auto tail = [m, xi](double T) { return delta2_tail(T, m, xi); };
    const double integral = bulk_plus_tail(a, b, std::max(64.0, 8.0 * m), integrand, tail);
    return xi * std::pow(q.phi / q.m, xi) * integral;
}

double laplace_functional(const ShotNoiseQuery& q) {
    if (q.lambda == 0.0) return 1.0;
    const double mu_u = unit_ball_volume(q.d);
    return std::exp(-mu_u * delta1(q) * q.lambda);
}

double mgf(const ShotNoiseQuery& q) {
    if (q.phi <= 0.0) return 1.0;
    const double d2 = delta2(q);
    if (q.lambda == 0.0) return 1.0;
    const double mu_u = unit_ball_volume(q.d);
    return std::exp(mu_u * d2 * q.lambda);
}

namespace {

// Radial PGFL integral Integral_1^w u^(d-1) g(phi u^-alpha) du with an
// analytic tail in powers of phi u^-alpha / m.  `mgf_sign` selects between
// the Laplace kernel 1 - (1+x)^-m and the MGF kernel (1-x)^-m - 1.
double pgfl_radial_integral(double phi, int m, double alpha, int d, double window,
                            bool mgf_kernel) {
    auto kernel = [m, mgf_kernel](double x) {
        // x = phi * u^-alpha / m
        return mgf_kernel ? std::expm1(-double(m) * std::log1p(-x))
                          : -std::expm1(-double(m) * std::log1p(x));
    };
    auto integrand = [&](double u) {
        const double x = phi * std::pow(u, -alpha) / double(m);
        return std::pow(u, d - 1 ) * kernel(x);
    };
    // Tail split where the series argument is at most 1/4.
    const double split = std::max({2.0, std::pow(4.0 * phi / m, 1.0 / alpha)});
    auto tail = [&](double T) {
        double coeff = 1.0;
        double sum = 0.0;
        const double base = phi / double(m);
        for (int i = 1; i <= kMaxSeriesTerms; ++i) {
            coeff *= double(m + i - 1) / double(i);
            const double sign = mgf_kernel ? 1.0 : (i % 2 == 1 ? 1.0 : -1.0);
            const double term = sign * coeff * std::pow(base, i) *
                                std::pow(T, double(d) - alpha * i) / (alpha * i - d);
            sum += term;
            if (std::abs(term) <= 1e-16 * std::abs(sum) + 1e-300) return sum;
        }
        throw_numeric("tail series for the PGFL radial integral did not converge");
    };
    if (!std::isinf(window) && window <= split) return integrate(integrand, 1.0, window);
    double value = split > 1.0 ? integrate(integrand, 1.0, split) : 0.0;
    const double split_eff = std::max(split, 1.0);
    value += tail(split_eff);
    if (!std::isinf(window)) value -= tail(window);
    return value;
}

} // namespace

double laplace_pgfl_direct(double phi, double lambda, int m, double alpha, int d,
                           double window) {
    if (!(phi > 0.0)) throw_argument("laplace_pgfl_direct requires phi > 0");
    if (!(alpha > d)) throw_argument("laplace_pgfl_direct requires alpha > d");
    if (lambda == 0.0) return 1.0;
    const double mu_u = unit_ball_volume(d);
    const double radial = pgfl_radial_integral(phi, m, alpha, d, window, false);
    return std::exp(-lambda * d * mu_u * radial);
}

double mgf_pgfl_direct(double phi, double lambda, int m, double alpha, int d, double window) {
    if (!(phi > 0.0)) throw_argument("mgf_pgfl_direct requires phi > 0");
    if (!(phi < m)) throw_numeric("mgf_pgfl_direct requires phi < m");
    if (!(alpha > d)) throw_argument("mgf_pgfl_direct requires alpha > d");
    if (lambda == 0.0) return 1.0;
    const double mu_u = unit_ball_volume(d);
    const double radial = pgfl_radial_integral(phi, m, alpha, d, window, true);
    return std::exp(lambda * d * mu_u * radial);
}

TaylorJet delta1_jet(double phi, std::size_t order, int m, double alpha, int d,
                     double window) {
    ShotNoiseQuery q;
    q.phi = phi;
    q.window = window;
    q.m = m;
    q.alpha = alpha;
    q.d = d;
    const double xi = q.xi();
    const double value = delta1(q);
    if (order == 0) return TaylorJet::constant(value, phi, 0);

    // Delta_1 = xi (phi/m)^xi J(phi) with J' elementary:
    //   J'(phi) = m^xi phi^(-1-xi) (1 - (m/(m+phi))^m)
    //           - c^xi phi^(-1-xi) (1 - (c/(c+phi))^m),  c = m * window^alpha,
    // where the second term is absent for an infinite window.
    const double prefactor = xi * std::pow(phi / m, xi);
    const double j_value = value / prefactor;

    const TaylorJet phi_jet = TaylorJet::variable(phi, order - 1);
    auto limit_term = [&](double limit_scale) {
        const TaylorJet denom = phi_jet + TaylorJet::constant(limit_scale, phi, order - 1);
        const TaylorJet ratio = TaylorJet::constant(limit_scale, phi, order - 1) / denom;
        const TaylorJet one = TaylorJet::constant(1.0, phi, order - 1);
        return pow(phi_jet, -1.0 - xi) *
               ((one - pow(ratio, double(m))) * std::pow(limit_scale, xi));
    };
    TaylorJet j_derivative = limit_term(double(m));
    if (!std::isinf(window))
        j_derivative = j_derivative - limit_term(double(m) * std::pow(window, alpha));

    const TaylorJet j_jet = integrate_jet(j_derivative, j_value);
    const TaylorJet phi_full = TaylorJet::variable(phi, order);
    return pow(phi_full * (1.0 / m), xi) * j_jet * xi;
}

double psi(double phi, std::size_t order, double lambda_t, int m, double alpha, int d,
           double window) {
    if (!(phi > 0.0)) throw_argument("psi requires phi > 0");
    const double mu_u = unit_ball_volume(d);
    TaylorJet exponent(phi, order);
    if (lambda_t > 0.0)
        exponent = delta1_jet(phi, order, m, alpha, d, window) * (-mu_u * lambda_t);
    else
        exponent = TaylorJet::constant(0.0, phi, order);
    const TaylorJet g = exp(exponent) / TaylorJet::variable(phi, order);
    return std::pow(-phi, double(order)) * g[order];
}

double per_attempt_success(double r, const NetworkConfig& config, double window,
                           std::vector<std::string>* warnings) {
    if (!(r >= 1.0)) throw_argument("per_attempt_success requires r >= 1");
    if (config.lambda_t == 0.0) return 1.0;
    const double a = double(config.m) * config.beta * std::pow(r, config.alpha);
    const double raw = a * psi(a, std::size_t(config.m - 1), config.lambda_t, config.m,
                               config.alpha, config.d, window);
    if (raw < -1e-9 || raw > 1.0 + 1e-9) {
        if (warnings)
            warnings->push_back("per-attempt success clamped from " + std::to_string(raw) +
                                " at r = " + std::to_string(r));
    }
    return raw < 0.0 ? 0.0 : raw > 1.0 ? 1.0 : raw;
}

double connected_intensity_bound(double r, int tau, const NetworkConfig& config,
                                 double window, std::vector<std::string>* warnings) {
    if (tau < 1) throw_argument("connected_intensity_bound requires tau >= 1");
    const double p = per_attempt_success(r, config, window, warnings);
    return config.lambda_r * -std::expm1(double(tau) * std::log1p(-p));
}

} // namespace mtcap
