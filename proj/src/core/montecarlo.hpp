// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/pointprocess.hpp"

namespace mtcap {

// `iid` resamples interferer positions and marks on every attempt (matching
// the analysis, which neglects temporal interference correlation);
// `fixed_positions` freezes positions per trial and redraws only the marks.
enum class InterferenceMode {
    iid,
    fixed_positions,
};

std::string to_string(InterferenceMode mode);
InterferenceMode interference_mode_from_string(const std::string& name);

struct McOptions {
    std::uint64_t seed = 1;
    std::uint64_t trials = 10000;
    int threads = 1;
    InterferenceMode mode = InterferenceMode::iid;
    ClipPolicy clip = ClipPolicy::capped;
    double bias_tol = 1e-4; // truncation-bias budget for the window radius
    double r_sim = 0.0;     // > 0 overrides bias_tol
    bool per_receiver_interference = false;
    std::int64_t fixed_receiver_count = -1; // >= 0 replaces the Poisson count
};

// Simulation window radius implied by the options.
double resolve_window(const NetworkConfig& config, const McOptions& opts);

struct ReceiverRecord {
    double distance = 0.0;
    int first_success_attempt = 0; // 0 when never connected within tau
};

struct TrialOutcome {
    std::vector<ReceiverRecord> receivers;
    std::vector<double> interference; // per attempt, evaluated at the origin
    bool outage = false;              // any receiver never connected
};

TrialOutcome run_trial(const NetworkConfig& config, double r_sim, const McOptions& opts,
                       std::uint64_t trial);

// Raw per-trial summaries for debugging and external analysis: one row per
// trial with the outage flag, receiver count, first/last success attempt
// among connected receivers, and the per-attempt interference samples.
std::string trial_summary_csv(const NetworkConfig& config, const McOptions& opts);

struct OutageEstimate {
    double probability = 0.0;
    double ci_half = 0.0; // 1.96 * sqrt(p(1-p)/N)
    std::uint64_t trials = 0;
    InterferenceMode mode = InterferenceMode::iid;
    ClipPolicy clip = ClipPolicy::capped;
};

// Fraction of trials in outage; empty-receiver trials count as non-outage.
OutageEstimate estimate_outage(const NetworkConfig& config, const McOptions& opts);

struct RadialBinEstimate {
    double r_lo = 0.0;
    double r_hi = 0.0;
    double volume = 0.0;
    double lambda_hat = 0.0;
    double ci_half = 0.0;
    std::uint64_t connected = 0;
};

// Connected-receiver density per radial bin after tau attempts.  Bin 0 is
// the sub-unit ball; `bins` further equal-width bins cover [1, s].
std::vector<RadialBinEstimate> estimate_connected_intensity(const NetworkConfig& config,
                                                            int bins, const McOptions& opts);

struct InterferenceStats {
    double mean = 0.0;
    double variance = 0.0;
    std::uint64_t trials = 0;
    struct Transform {
        double phi = 0.0;
        double value = 0.0; // empirical E[exp(-phi I)]
        double se = 0.0;
    };
    std::vector<Transform> laplace;
};

InterferenceStats estimate_interference(const NetworkConfig& config,
                                        const std::vector<double>& phi_grid,
                                        const McOptions& opts);

struct RateEstimate {
    double b = 0.0;       // nats per channel use
    double ci_half = 0.0; // 1.96 * SE
    std::uint64_t trials_used = 0;
    std::uint64_t discarded_zero_interference = 0;
    bool discard_fraction_flagged = false; // discarded fraction above 1%
};

// Mean of log(1 + H_max s^-alpha / I) with H_max the best of tau gains;
// zero-interference trials are discarded and counted.
RateEstimate estimate_rate(const NetworkConfig& config, const McOptions& opts);

struct RateBoundReport {
    double lower_reference = 0.0; // log(1 + 1/(mu_r lambda_t))
    double ratio = 0.0;           // b / lower_reference
    bool in_band = false;         // fixed band [0.2, 3.0]
};

RateBoundReport check_rate_bounds(const RateEstimate& rate, const NetworkConfig& config);

struct SuccessFrequency {
    double p_hat = 0.0;
    double ci_half = 0.0;
    std::uint64_t trials = 0;
};

// Single-attempt connection frequency for a probe receiver at distance r.
SuccessFrequency mc_success_probability(const NetworkConfig& config, double r,
                                        const McOptions& opts);

struct DispersionReport {
    struct Annulus {
        double r_lo = 0.0;
        double r_hi = 0.0;
        double mean = 0.0;
        double variance = 0.0;
        double dispersion = 0.0; // variance / mean
    };
    std::vector<Annulus> annuli;
};

// Variance-to-mean ratio of connected-receiver counts in disjoint annuli.
DispersionReport connected_count_dispersion(const NetworkConfig& config,
                                            const std::vector<double>& edges,
                                            const McOptions& opts);

} // namespace mtcap
