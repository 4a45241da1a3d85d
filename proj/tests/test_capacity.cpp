// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/capacity.hpp"
#include "core/error.hpp"

using namespace mtcap;

namespace {

NetworkConfig template_config() {
    NetworkConfig config;
    config.d = 2;
    config.alpha = 4.0;
    config.beta = 1.0;
    config.s = 10.0;
    config.lambda_t = 0.0;
    config.lambda_r = 0.1;
    config.m = 1;
    config.tau = 1;
    config.epsilon = 0.05;
    return config;
}

std::vector<double> decade_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    for (int i = 0; i < points; ++i)
        grid.push_back(lo * std::pow(hi / lo, double(i) / (points - 1)));
    return grid;
}

} // namespace

TEST_CASE("multicast capacity arithmetic") {
    CHECK(multicast_capacity(2.0, 2.0264e-5, 0.05, 1) ==
          doctest::Approx(3.8502e-5).epsilon(1e-4));
    CHECK(multicast_capacity(2.0, 1e-4, 1e-12, 1) == doctest::Approx(2e-4).epsilon(1e-9));
    CHECK(multicast_capacity(2.0, 1e-4, 0.05, 2) ==
          doctest::Approx(0.5 * multicast_capacity(2.0, 1e-4, 0.05, 1)).epsilon(1e-12));
    CHECK_THROWS_AS(multicast_capacity(0.0, 1.0, 0.05, 1), Error);
}

TEST_CASE("regime configuration") {
    const NetworkConfig base = template_config();

    NetworkConfig dense = regime_config(Regime::dense, 100.0, base);
    CHECK(dense.s == base.s);
    CHECK(dense.lambda_r == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));

    NetworkConfig large = regime_config(Regime::large, 100.0, base);
    CHECK(large.lambda_r == base.lambda_r);
    CHECK(large.s == doctest::Approx(std::sqrt(1000.0 / std::numbers::pi)).epsilon(1e-12));

    NetworkConfig ld = regime_config(Regime::large_dense, 100.0, base, 1.0);
    CHECK(derive_params(ld).mu_r == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(ld.lambda_r == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(derive_params(ld).k == doctest::Approx(100.0).epsilon(1e-12));

    // k small enough to need s < 1 is rejected.
    CHECK_THROWS_AS(regime_config(Regime::large_dense, 1.0, base, 1.0), Error);
}

TEST_CASE("sweep rows and csv schema") {
    const SweepResult result =
        sweep(Regime::dense, decade_grid(100.0, 10000.0, 9), template_config(), {});
    REQUIRE(result.rows.size() == 9);

    // rho is constant over k and lambda_bar scales exactly as 1/k for tau=1.
    const double rho = result.rows.front().rho;
    for (const SweepRow& row : result.rows) {
        CHECK(row.rho == doctest::Approx(rho).epsilon(1e-13));
        CHECK(row.rho ==
              doctest::Approx(std::pow(0.05 * 2.0, 1.0)).epsilon(1e-12)); // eps(tau+1)/tau^2
    }
    const double scale = result.rows.front().lambda_bar_closed * result.rows.front().k;
    for (const SweepRow& row : result.rows)
        CHECK(row.lambda_bar_closed * row.k == doctest::Approx(scale).epsilon(1e-12));

    const std::string csv = sweep_to_csv(result);
    CHECK(csv.rfind("regime,k,s,lambda_r,lambda_bar_closed,lambda_bar_solved,b_proxy,b_mc,"
                    "C_eps,rho,flags\n", 0) == 0);

    const SweepResult empty = sweep(Regime::dense, {}, template_config(), {});
    CHECK(empty.rows.empty());
    CHECK(empty.warnings.size() == 1);
}

TEST_CASE("fit recovers a synthetic power law exactly") {
    SweepResult synthetic;
    synthetic.regime = Regime::dense;
    for (double k : decade_grid(100.0, 10000.0, 7)) {
        SweepRow row;
        row.k = k;
        row.c_eps = 0.37 * std::pow(k, -0.5) * std::log(k);
        synthetic.rows.push_back(row);
    }
    const ScalingFit fit = fit_exponent(synthetic);
    CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.residual_rms == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit.points == 7);

    SweepResult thin = synthetic;
    thin.rows.resize(3);
    CHECK_THROWS_AS(fit_exponent(thin), Error);
}

TEST_CASE("dense fits land near the expected exponents") {
    const auto grid = decade_grid(100.0, 10000.0, 9);
    for (int tau : {1, 2, 4}) {
        NetworkConfig base = template_config();
        base.tau = tau;
        const ScalingFit fit = fit_exponent(sweep(Regime::dense, grid, base, {}));
        CHECK(std::abs(fit.exponent + 1.0 / tau) <= 0.1);
    }
}

TEST_CASE("unicast reduction slopes") {
    const UnicastReport report = unicast_reduction_check(template_config());
    CHECK(report.epsilon_pass);
    CHECK(report.epsilon_slope == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(report.s_pass);
    CHECK(report.s_slope == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(report.beta_slope_proof == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(report.beta_slope_literal < report.beta_slope_proof); // steeper, reported only
}

TEST_CASE("retransmission study finds an interior optimum") {
    NetworkConfig base = template_config();
    const RetxStudy study =
        retransmission_study(base, {1, 2, 3, 4, 5, 6, 7, 8}, 100.0, {});
    REQUIRE(study.rows.size() == 8);
    CHECK(study.argmax_tau > 1);

    // tau = 1 row equals the base pipeline value.
    NetworkConfig tau1 = regime_config(Regime::dense, 100.0, base);
    const ContentionSolution sol = max_contention_closed_form(tau1);
    const double b = std::log1p(1.0 / (derive_params(tau1).mu_r * sol.lambda_bar));
    CHECK(study.rows.front().c_eps ==
          doctest::Approx(multicast_capacity(b, sol.lambda_bar, 0.05, 1)).epsilon(1e-12));

    // Eventually decreasing beyond the optimum.
    bool after_peak = false;
    double prev = 0.0;
    for (const RetxRow& row : study.rows) {
        if (after_peak) CHECK(row.c_eps < prev);
        if (row.tau == study.argmax_tau) after_peak = true;
        prev = row.c_eps;
    }
}
