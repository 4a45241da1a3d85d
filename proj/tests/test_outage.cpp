// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/outage.hpp"

using namespace mtcap;

namespace {

NetworkConfig k10_config() {
    NetworkConfig config;
    config.d = 2;
    config.alpha = 4.0;
    config.beta = 1.0;
    config.s = 10.0;
    config.m = 1;
    config.tau = 1;
    config.epsilon = 0.05;
    config.lambda_r = 10.0 / (100.0 * std::numbers::pi); // k = 10
    config.lambda_t = 0.01;
    return config;
}

} // namespace

TEST_CASE("radial expectation") {
    // Density normalization: a constant integrates to itself.
    CHECK(radial_expectation([](double) { return 3.25; }, 2, 10.0) ==
          doctest::Approx(3.25).epsilon(1e-12));
    // d = 2, fn = r^2 gives s^2 / 2.
    CHECK(radial_expectation([](double r) { return r * r; }, 2, 7.0) ==
          doctest::Approx(49.0 / 2.0).epsilon(1e-12));
    // Null sets contribute nothing.
    CHECK(radial_expectation([](double r) { return r >= 10.0 ? 1.0 : 0.0; }, 2, 10.0) ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("analytic outage basics") {
    NetworkConfig config = k10_config();
    config.lambda_t = 0.0;
    CHECK(outage_probability_analytic(config) == 0.0);

    // Injected constant success probability: closed form 1 - e^{-k(1-p)^tau}.
    config = k10_config();
    const std::function<double(double)> stub = [](double) { return 0.99; };
    const double value = outage_probability_analytic(config, ClipPolicy::capped,
                                                     kInfiniteWindow, &stub);
    CHECK(value == doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-10));
}

TEST_CASE("analytic outage monotonicity") {
    NetworkConfig config = k10_config();
    double prev = 0.0;
    for (double lambda_t : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
        config.lambda_t = lambda_t;
        const double v = outage_probability_analytic(config);
        CHECK(v > prev);
        CHECK(v < 1.0);
        prev = v;
    }
    config.lambda_t = 1e-3;
    prev = 1.0;
    for (int tau : {1, 2, 3, 4}) {
        config.tau = tau;
        const double v = outage_probability_analytic(config);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("strict clip policy adds the sub-unit outage floor") {
    NetworkConfig config = k10_config();
    config.lambda_t = 0.0;
    const double floor =
        1.0 - std::exp(-derive_params(config).k * std::pow(config.s, -2.0));
    CHECK(outage_probability_analytic(config, ClipPolicy::strict_eq1) ==
          doctest::Approx(floor).epsilon(1e-10));
    // Capped mode has no floor at lambda_t = 0.
    CHECK(outage_probability_analytic(config, ClipPolicy::capped) == 0.0);
}

TEST_CASE("d_hat constants against the Beta closed form") {
    CHECK(d_hat_constant(1, 0.5) == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-8));
    for (int m : {1, 2, 3, 5}) {
        const double xi = 0.5;
        double total = 0.0;
        for (int j = 0; j < m; ++j) {
            double binom = 1.0;
            for (int i = 1; i <= j; ++i) binom *= double(m - j + i) / double(i);
            total += binom * std::exp(std::lgamma(j + xi) + std::lgamma(m - j - xi) -
                                      std::lgamma(double(m)));
        }
        double product = 1.0;
        for (int j = 1; j < m; ++j) product *= 1.0 - xi / double(j);
        CHECK(d_hat_constant(m, xi) ==
              doctest::Approx(xi * std::pow(double(m), -xi) * product * total).epsilon(1e-8));
    }
}

TEST_CASE("closed-form maximum contention intensity") {
    const NetworkConfig config = k10_config();
    const ContentionSolution sol = max_contention_closed_form(config);
    CHECK(sol.lambda_bar == doctest::Approx(2.0264e-5).epsilon(1e-4));
    CHECK(sol.rho == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(sol.d_hat == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-8));
    CHECK(sol.premise_ok); // tau = 1 premise is k >= 1

    NetworkConfig tau2 = config;
    tau2.tau = 2;
    CHECK(max_contention_closed_form(tau2).rho ==
          doctest::Approx(0.25 * std::sqrt(0.15)).epsilon(1e-12));

    // Premise warning when k < epsilon^-(tau-1).
    NetworkConfig tau3 = config;
    tau3.tau = 3; // needs k >= 400
    const ContentionSolution warned = max_contention_closed_form(tau3);
    CHECK_FALSE(warned.premise_ok);
    CHECK(warned.warnings.size() == 1);

    CHECK_THROWS_AS(max_contention_closed_form(config, Normalization::proof_consistent, 1.5),
                    Error);
}

TEST_CASE("closed-form scaling ratios are exact") {
    const NetworkConfig base = k10_config();
    const double reference = max_contention_closed_form(base).lambda_bar;
    for (int tau : {1, 2, 4}) {
        NetworkConfig a = base;
        a.tau = tau;
        NetworkConfig b = a;
        b.epsilon = 2.0 * a.epsilon;
        const double ratio = max_contention_closed_form(b).lambda_bar /
                             max_contention_closed_form(a).lambda_bar;
        CHECK(ratio == doctest::Approx(std::pow(2.0, 1.0 / tau)).epsilon(1e-12));

        NetworkConfig c = a;
        c.lambda_r *= 2.0; // doubles k at fixed mu_r
        const double k_ratio = max_contention_closed_form(c).lambda_bar /
                               max_contention_closed_form(a).lambda_bar;
        CHECK(k_ratio == doctest::Approx(std::pow(2.0, -1.0 / tau)).epsilon(1e-12));
    }
    // Doubling mu_r at fixed k halves lambda_bar.
    NetworkConfig d = base;
    d.s = base.s * std::sqrt(2.0);
    d.lambda_r = base.lambda_r / 2.0;
    CHECK(max_contention_closed_form(d).lambda_bar / reference ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("literal normalization is reported alongside") {
    const NetworkConfig config = k10_config();
    const ContentionSolution literal =
        max_contention_closed_form(config, Normalization::literal);
    CHECK(literal.lambda_bar > 0.0);
    CHECK(literal.delta1_hat_beta ==
          doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-10)); // Delta_1(1, inf), m = 1
    // At beta = 1 the literal divisor Delta_1(1) = pi/4 is half the
    // proof-consistent pi/2, so the literal lambda_bar is exactly twice.
    CHECK(literal.lambda_bar ==
          doctest::Approx(2.0 * max_contention_closed_form(config).lambda_bar).epsilon(1e-10));
}

TEST_CASE("solver reproduces the closed-form inverse of a stub model") {
    // Stub per-attempt success p = e^{-c lambda_t}, constant in r: for tau=1
    // the exact inverse is lambda_bar = -log(1 + log(1-eps)/k) / c.
    NetworkConfig config = k10_config();
    const double c = 50.0;
    const double k = derive_params(config).k;
    const double expected = -std::log(1.0 + std::log(1.0 - config.epsilon) / k) / c;

    // Drive the bisection against the stub through the analytic formula:
    // outage(lambda) = 1 - exp(-k (1 - e^{-c lambda})).
    auto outage_of = [&](double lambda_t) {
        return 1.0 - std::exp(-k * (1.0 - std::exp(-c * lambda_t)));
    };
    double lo = 1e-12, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (outage_of(mid) < config.epsilon ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(expected).epsilon(1e-6));

    // The real solver against the real model: plugged-back outage hits eps.
    const ContentionSolution solved = solve_max_contention(config);
    CHECK(solved.achieved_outage == doctest::Approx(config.epsilon).epsilon(1e-3));
    config.lambda_t = solved.lambda_bar;
    CHECK(outage_probability_analytic(config) ==
          doctest::Approx(config.epsilon).epsilon(2e-3));
    // Deterministic: same inputs, same answer.
    CHECK(solve_max_contention(config).lambda_bar == solved.lambda_bar);
}

TEST_CASE("solver stays within a small factor of the closed form") {
    for (double eps : {0.01, 0.05, 0.1}) {
        for (int tau : {1, 2, 4}) {
            NetworkConfig config = k10_config();
            config.epsilon = eps;
            config.tau = tau;
            config.lambda_r = 1000.0 / (100.0 * std::numbers::pi); // k = 1000
            const double closed = max_contention_closed_form(config).lambda_bar;
            const double solved = solve_max_contention(config).lambda_bar;
            CHECK(solved / closed > 1.0 / 3.0);
            CHECK(solved / closed < 3.0);
        }
    }
}

TEST_CASE("bracket failure is reported") {
    // Under strict clipping the outage never drops below the sub-unit floor;
    // ask for an epsilon below it.
    NetworkConfig config = k10_config();
    config.s = 2.0;
    config.lambda_r = 2.0; // k = 8pi, floor = 1 - e^{-2pi} ~ 0.998
    config.epsilon = 0.5;
    SolverOptions opts;
    opts.clip = ClipPolicy::strict_eq1;
    CHECK_THROWS_AS(solve_max_contention(config, SolverOracle::analytic, opts), Error);
    try {
        solve_max_contention(config, SolverOracle::analytic, opts);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::bracket);
    }
}
