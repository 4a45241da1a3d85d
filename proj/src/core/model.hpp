// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>

#include "core/rng.hpp"

namespace mtcap {

// Channel power gains are Gamma(m, 1/m) with unit mean by default.  The
// scale-one variant keeps the same Gamma shape but scale 1 (mean m); the
// SIR statistics are invariant because desired and interfering links scale
// together, so only gain-valued outputs (samples, CDF axes, transform
// arguments) change.
enum class FadingScale {
    unit_mean,
    scale_one,
};

std::string to_string(FadingScale scale);
FadingScale fading_scale_from_string(const std::string& name);

// Receivers inside the unit ball: `capped` evaluates their desired link at
// effective distance 1, `strict_eq1` follows the bounded path-loss law
// literally (they never connect).
enum class ClipPolicy {
    capped,
    strict_eq1,
};

std::string to_string(ClipPolicy clip);
ClipPolicy clip_policy_from_string(const std::string& name);

struct NetworkConfig {
    int d = 2;                 // spatial dimension, 1..3
    double alpha = 4.0;        // path-loss exponent, > d
    double beta = 1.0;         // SIR threshold (linear)
    double s = 10.0;           // cluster ball radius, >= 1
    double lambda_t = 0.01;    // transmitter intensity
    double lambda_r = 0.1;     // intended-receiver intensity
    int m = 1;                 // Nakagami shape, integer >= 1
    int tau = 1;               // transmission attempts, >= 1
    double epsilon = 0.05;     // outage bound, in (0,1)
    FadingScale fading_scale = FadingScale::unit_mean;

    double gain_mean() const { return fading_scale == FadingScale::unit_mean ? 1.0 : double(m); }

    // Throws Error(config) naming the violated constraint.
    void validate() const;

    std::string to_json() const;
    static NetworkConfig from_json(const std::string& text);
    static NetworkConfig load_file(const std::string& path);
};

struct DerivedParams {
    double xi = 0.0;   // d / alpha
    double mu_u = 0.0; // unit-ball volume
    double mu_r = 0.0; // cluster volume mu_u * s^d
    double k = 0.0;    // mean receivers per cluster mu_r * lambda_r
};

DerivedParams derive_params(const NetworkConfig& config);

// Bounded path-loss law: gain = distance^-alpha for distance >= 1, else 0.
inline double path_loss(double distance, double alpha) {
    return distance >= 1.0 ? std::pow(distance, -alpha) : 0.0;
}

// One channel power gain draw: Gamma(m, gain_mean/m).
inline double nakagami_power_gain(int m, double gain_mean, RandomStream& rng) {
    return rng.gamma_int(m, gain_mean / double(m));
}
inline double nakagami_power_gain(int m, RandomStream& rng) {
    return nakagami_power_gain(m, 1.0, rng);
}

// CDF of the power gain consistent with nakagami_power_gain.
double fading_cdf(double x, int m, double gain_mean = 1.0);

} // namespace mtcap
