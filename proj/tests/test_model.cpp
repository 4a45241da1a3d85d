// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/model.hpp"

using namespace mtcap;

namespace {

std::string violation_message(const NetworkConfig& config) {
    try {
        config.validate();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("derive_params on the documented cases") {
    NetworkConfig config;
    config.d = 2;
    config.s = 1.0;
    DerivedParams derived = derive_params(config);
    CHECK(derived.mu_u == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(derived.mu_r == doctest::Approx(std::numbers::pi).epsilon(1e-15));

    config.d = 3;
    config.alpha = 4.5;
    derived = derive_params(config);
    CHECK(derived.mu_u == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));

    config.d = 2;
    config.alpha = 4.0;
    config.s = 10.0;
    config.lambda_r = 0.0318;
    derived = derive_params(config);
    CHECK(derived.k == doctest::Approx(std::numbers::pi * 100.0 * 0.0318).epsilon(1e-14));
    CHECK(derived.k == doctest::Approx(10.0).epsilon(0.01));
    CHECK(derived.xi == doctest::Approx(0.5));
}

TEST_CASE("derive_params is deterministic and pure") {
    NetworkConfig config;
    config.s = 7.25;
    config.lambda_r = 0.0371;
    const DerivedParams a = derive_params(config);
    const DerivedParams b = derive_params(config);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("invariant violations name the constraint") {
    NetworkConfig config;
    config.alpha = 2.0;
    CHECK(violation_message(config).find("alpha > d") != std::string::npos);

    config = NetworkConfig{};
    config.s = 0.5;
    CHECK(violation_message(config).find("s >= 1") != std::string::npos);

    config = NetworkConfig{};
    config.epsilon = 1.5;
    CHECK(violation_message(config).find("epsilon") != std::string::npos);

    config = NetworkConfig{};
    config.m = 0;
    CHECK(violation_message(config).find("m") != std::string::npos);

    config = NetworkConfig{};
    config.lambda_r = 0.0;
    CHECK(violation_message(config).find("lambda_r") != std::string::npos);
}

TEST_CASE("path loss law") {
    CHECK(path_loss(0.5, 4.0) == 0.0);
    CHECK(path_loss(1.0, 4.0) == 1.0);
    CHECK(path_loss(2.0, 4.0) == doctest::Approx(0.0625).epsilon(1e-15));
    // Non-increasing on [1, inf), zero below 1.
    double prev = 2.0;
    for (double r = 1.0; r <= 9.0; r += 0.5) {
        const double g = path_loss(r, 3.0);
        CHECK(g <= prev);
        prev = g;
    }
    CHECK(path_loss(0.999999, 3.0) == 0.0);
}

TEST_CASE("fading sampler moments") {
    RandomStream rng(11, StreamPurpose::probe, 0, 0);
    const int n = 1000000;

    double sum = 0.0;
    int above_one = 0;
    for (int i = 0; i < n; ++i) {
        const double h = nakagami_power_gain(1, rng);
        sum += h;
        if (h > 1.0) ++above_one;
    }
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(double(above_one) / n == doctest::Approx(std::exp(-1.0)).epsilon(0.005 / std::exp(-1.0)));

    double sum4 = 0.0, sum4_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double h = nakagami_power_gain(4, rng);
        sum4 += h;
        sum4_sq += h * h;
    }
    const double mean4 = sum4 / n;
    CHECK(mean4 == doctest::Approx(1.0).epsilon(0.01));
    CHECK(sum4_sq / n - mean4 * mean4 == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("fading cdf values and agreement with the sampler") {
    CHECK(fading_cdf(0.0, 1) == 0.0);
    CHECK(fading_cdf(1.0, 1) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

    // Monotone and tending to one.
    double prev = -1.0;
    for (double x = 0.0; x <= 12.0; x += 0.25) {
        const double v = fading_cdf(x, 3);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(fading_cdf(40.0, 3) == doctest::Approx(1.0).epsilon(1e-9));

    // Empirical CDF gap at a few probe points, 10^6 draws.
    for (int m : {1, 2, 4}) {
        RandomStream rng(13 + m, StreamPurpose::probe, 0, 0);
        const int n = 1000000;
        int below_half = 0, below_one = 0, below_two = 0;
        for (int i = 0; i < n; ++i) {
            const double h = nakagami_power_gain(m, rng);
            below_half += h <= 0.5;
            below_one += h <= 1.0;
            below_two += h <= 2.0;
        }
        CHECK(std::abs(double(below_half) / n - fading_cdf(0.5, m)) < 0.005);
        CHECK(std::abs(double(below_one) / n - fading_cdf(1.0, m)) < 0.005);
        CHECK(std::abs(double(below_two) / n - fading_cdf(2.0, m)) < 0.005);
    }
}

TEST_CASE("scale-one mode rescales gains and cdf consistently") {
    const int m = 3;
    RandomStream rng(29, StreamPurpose::probe, 0, 0);
    const int n = 400000;
    double sum = 0.0;
    int below_three = 0;
    for (int i = 0; i < n; ++i) {
        const double h = nakagami_power_gain(m, double(m), rng);
        sum += h;
        below_three += h <= 3.0;
    }
    CHECK(sum / n == doctest::Approx(double(m)).epsilon(0.01));
    CHECK(double(below_three) / n == doctest::Approx(fading_cdf(3.0, m, 3.0)).epsilon(0.01));
    // Same argument on the unit-mean axis.
    CHECK(fading_cdf(3.0, m, 3.0) == doctest::Approx(fading_cdf(1.0, m, 1.0)).epsilon(1e-13));
}

TEST_CASE("config json round trip and strictness") {
    NetworkConfig config;
    config.lambda_t = 0.02;
    config.m = 2;
    config.fading_scale = FadingScale::scale_one;
    const NetworkConfig parsed = NetworkConfig::from_json(config.to_json());
    CHECK(parsed.lambda_t == config.lambda_t);
    CHECK(parsed.m == config.m);
    CHECK(parsed.fading_scale == FadingScale::scale_one);

    CHECK_THROWS_AS(NetworkConfig::from_json("{\"d\": 2}"), Error);           // missing fields
    CHECK_THROWS_AS(NetworkConfig::from_json("not json at all"), Error);      // parse error
    const std::string extra = R"({"d":2,"alpha":4,"beta":1,"s":10,"lambda_t":0.01,
        "lambda_r":0.1,"m":1,"tau":1,"epsilon":0.05,"bogus":3})";
    CHECK_THROWS_WITH_AS(NetworkConfig::from_json(extra),
                         doctest::Contains("unknown field"), Error);
}
