// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/quadrature.hpp"

using namespace mtcap;

TEST_CASE("polynomials are integrated to machine precision") {
    // Validates the G7/K15 nodes and weights jointly: the Kronrod rule is
    // exact through degree 22.
    for (int degree : {0, 3, 7, 13, 20}) {
        const double value =
            integrate([degree](double x) { return std::pow(x, degree); }, -1.0, 1.0);
        const double exact = degree % 2 == 1 ? 0.0 : 2.0 / (degree + 1);
        CHECK(value == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("smooth definite integrals") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity") {
    // Integral_0^1 x^(-1/2) dx = 2, refined adaptively toward the endpoint.
    const double value = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("semi-infinite integrals through the rational map") {
    CHECK(integrate_to_inf([](double x) { return std::exp(-x); }, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Integral_1^inf x^-2 dx = 1.
    CHECK(integrate_to_inf([](double x) { return 1.0 / (x * x); }, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("degenerate and reversed ranges give zero") {
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    CHECK(integrate([](double) { return 1.0; }, 3.0, 2.0) == 0.0);
}

TEST_CASE("budget exhaustion is reported") {
    QuadratureOptions opts;
    opts.max_panels = 4;
    opts.rel_tol = 1e-14;
    opts.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(std::abs(x)); },
                              0.0, 1.0, opts),
                    Error);
}
