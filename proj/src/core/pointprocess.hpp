// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/rng.hpp"

namespace mtcap {

using Position = std::array<double, 3>;

inline double norm(const Position& p, int d) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i) acc += p[i] * p[i];
    return std::sqrt(acc);
}

inline double distance(const Position& a, const Position& b, int d) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
}

// Annulus r_inner <= |x| <= r_outer; r_inner = 0 gives a ball.
struct Region {
    int d = 2;
    double r_inner = 0.0;
    double r_outer = 1.0;

    double volume() const;
    bool contains(const Position& p) const;

    static Region ball(int d, double radius) { return Region{d, 0.0, radius}; }
    static Region annulus(int d, double inner, double outer) { return Region{d, inner, outer}; }
};

struct PointPattern {
    int d = 2;
    Region region;
    std::vector<Position> points;

    std::size_t size() const { return points.size(); }
    // One point per row, d coordinate columns.
    std::string to_csv() const;
};

// Uniform point in the region by radial inversion plus a uniform direction.
Position sample_point(const Region& region, RandomStream& rng);

// Homogeneous PPP on the region: Poisson(intensity * volume) points, i.i.d.
// uniform positions.
PointPattern sample_ppp(double intensity, const Region& region, RandomStream& rng);

// Smallest simulation window radius R such that the expected interference
// contributed by transmitters beyond R (Campbell's formula with unit-mean
// marks), lambda_t * d * mu_u * R^(d-alpha) / (alpha - d), is at most
// bias_tol.  Clamped below at 1.
double truncation_radius(double lambda_t, double alpha, int d, double bias_tol);

// One Palm-conditioned realization: the typical transmitter sits at the
// origin, receivers form a PPP on the cluster ball, interferers a PPP on
// the simulation window.
struct ClusterScenario {
    PointPattern receivers;
    PointPattern interferers;
    std::vector<double> receiver_distance;
};

// A window smaller than max(1, s) is accepted but flagged through the
// optional warning sink.
ClusterScenario build_cluster_scenario(const NetworkConfig& config, double r_sim,
                                       std::uint64_t seed, std::uint64_t trial,
                                       std::vector<std::string>* warnings = nullptr);

} // namespace mtcap
