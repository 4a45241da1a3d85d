// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "core/pointprocess.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "core/error.hpp"
#include "core/mathutil.hpp"

namespace mtcap {

double Region::volume() const {
    const double mu_u = unit_ball_volume(d);
    return mu_u * (std::pow(r_outer, d) - std::pow(r_inner, d));
}

bool Region::contains(const Position& p) const {
    const double r = norm(p, d);
    return r >= r_inner - 1e-12 && r <= r_outer + 1e-12;
}

std::string PointPattern::to_csv() const {
    std::string out;
    char buf[96];
    for (const Position& p : points) {
        for (int i = 0; i < d; ++i) {
            std::snprintf(buf, sizeof(buf), i + 1 == d ? "%.17g\n" : "%.17g,", p[i]);
            out += buf;
        }
    }
    return out;
}

Position sample_point(const Region& region, RandomStream& rng) {
    const int d = region.d;
    const double u = rng.uniform();
    const double lo = std::pow(region.r_inner, d);
    const double hi = std::pow(region.r_outer, d);
    const double radius = std::pow(lo + u * (hi - lo), 1.0 / d);

    Position p{0.0, 0.0, 0.0};
    switch (d) {
    case 1:
        p[0] = rng.uniform() < 0.5 ? -radius : radius;
        break;
    case 2: {
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        p[0] = radius * std::cos(angle);
        p[1] = radius * std::sin(angle);
        break;
    }
    default: {
        const double cos_polar = 2.0 * rng.uniform() - 1.0;
        const double sin_polar = std::sqrt(std::max(0.0, 1.0 - cos_polar * cos_polar));
        const double azimuth = 2.0 * std::numbers::pi * rng.uniform();
        p[0] = radius * sin_polar * std::cos(azimuth);
        p[1] = radius * sin_polar * std::sin(azimuth);
        p[2] = radius * cos_polar;
        break;
    }
    }
    return p;
}

PointPattern sample_ppp(double intensity, const Region& region, RandomStream& rng) {
    if (intensity < 0.0) throw_argument("PPP intensity must be non-negative");
    if (!(region.r_outer > region.r_inner) || region.r_inner < 0.0)
        throw_argument("PPP region is degenerate");
    PointPattern pattern;
    pattern.d = region.d;
    pattern.region = region;
    if (intensity > 0.0) {
        const std::uint64_t count = rng.poisson(intensity * region.volume());
        pattern.points.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) pattern.points.push_back(sample_point(region, rng));
    }
    return pattern;
}

double truncation_radius(double lambda_t, double alpha, int d, double bias_tol) {
    if (!(alpha > d)) throw_argument("truncation_radius requires alpha > d");
    if (!(bias_tol > 0.0)) throw_argument("truncation_radius requires bias_tol > 0");
    if (lambda_t <= 0.0) return 1.0;
    const double mu_u = unit_ball_volume(d);
    // lambda_t * d * mu_u * R^(d-alpha) / (alpha-d) = bias_tol
    const double radius =
        std::pow(lambda_t * d * mu_u / ((alpha - d) * bias_tol), 1.0 / (alpha - d));
    return radius < 1.0 ? 1.0 : radius;
}

ClusterScenario build_cluster_scenario(const NetworkConfig& config, double r_sim,
                                       std::uint64_t seed, std::uint64_t trial,
                                       std::vector<std::string>* warnings) {
    if (warnings && r_sim < std::max(1.0, config.s))
        warnings->push_back("simulation window " + std::to_string(r_sim) +
                            " is smaller than the recommended max(1, s)");
    ClusterScenario scenario;
    RandomStream rx_stream(seed, StreamPurpose::receiver_field, 0, trial);
    scenario.receivers = sample_ppp(config.lambda_r, Region::ball(config.d, config.s), rx_stream);
    RandomStream tx_stream(seed, StreamPurpose::interferer_field, 0, trial);
    scenario.interferers =
        sample_ppp(config.lambda_t, Region::ball(config.d, std::max(r_sim, 1.0)), tx_stream);
    scenario.receiver_distance.reserve(scenario.receivers.size());
    for (const Position& p : scenario.receivers.points)
        scenario.receiver_distance.push_back(norm(p, config.d));
    return scenario;
}

} // namespace mtcap
