// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/outage.hpp"

namespace mtcap {

// Area spectral efficiency of cluster multicast: C = b * lambda_bar * (1 - eps) / tau.
double multicast_capacity(double b, double lambda_bar, double epsilon, int tau);

enum class Regime {
    dense,       // fixed cluster volume, receiver intensity grows with k
    large,       // fixed receiver intensity, cluster volume grows with k
    large_dense, // both grow, lambda_r proportional to mu_r
};

std::string to_string(Regime regime);
Regime regime_from_string(const std::string& name);

// Instantiate the template config at mean receiver count k under the regime.
// `c` is the proportionality constant lambda_r = c * mu_r of the large-dense
// regime.  Rejects parameterizations that would need s < 1.
NetworkConfig regime_config(Regime regime, double k, const NetworkConfig& base, double c = 1.0);

struct SweepOptions {
    Normalization normalization = Normalization::proof_consistent;
    bool solve = false; // also run the analytic-oracle bisection per row
    bool mc_rate = false;
    std::uint64_t mc_trials = 10000;
    std::uint64_t seed = 1;
    int threads = 1;
    ClipPolicy clip = ClipPolicy::capped;
    double large_dense_c = 1.0;
};

struct SweepRow {
    std::string regime;
    double k = 0.0;
    double s = 0.0;
    double lambda_r = 0.0;
    double lambda_bar_closed = 0.0; // selected normalization
    double lambda_bar_proof = 0.0;
    double lambda_bar_literal = 0.0;
    std::optional<double> lambda_bar_solved;
    double b_proxy = 0.0;
    std::optional<double> b_mc;
    double c_eps = 0.0;
    double rho = 0.0;
    std::string flags;
    bool failed = false;
};

struct SweepResult {
    Regime regime = Regime::dense;
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;
};

SweepResult sweep(Regime regime, const std::vector<double>& k_grid,
                  const NetworkConfig& base, const SweepOptions& options = {});

// Fixed column order for the tabular hand-off.
std::string sweep_to_csv(const SweepResult& result);

struct ScalingFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t points = 0;
    double k_min = 0.0;
    double k_max = 0.0;
};

// Least-squares slope of (log C - log log k) against log k; needs at least
// five usable rows spanning two decades of k.
ScalingFit fit_exponent(const SweepResult& result);

struct UnicastReport {
    double epsilon_slope = 0.0; // log lambda_bar vs log epsilon, expect +1
    bool epsilon_pass = false;
    double s_slope = 0.0; // log lambda_bar vs log s, expect -2
    bool s_pass = false;
    double beta_slope_proof = 0.0;   // reported without a pass/fail
    double beta_slope_literal = 0.0; // reported without a pass/fail
};

// Planar unicast reduction: d = 2, k = 1, tau = 1 closed-form scaling checks.
UnicastReport unicast_reduction_check(const NetworkConfig& base);

struct RetxRow {
    int tau = 0;
    double lambda_bar = 0.0;
    double b = 0.0;
    double c_eps = 0.0;
    bool premise_ok = true;
};

struct RetxStudy {
    std::vector<RetxRow> rows;
    int argmax_tau = 1;
};

// Capacity as a function of the attempt budget at fixed k.
RetxStudy retransmission_study(const NetworkConfig& base, const std::vector<int>& tau_grid,
                               double k, const SweepOptions& options = {});

std::string retx_to_csv(const RetxStudy& study);

} // namespace mtcap
