// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/jet.hpp"
#include "core/model.hpp"
#include "core/shotnoise.hpp"

namespace mtcap {

enum class Normalization {
    proof_consistent,
    literal,
};

std::string to_string(Normalization norm);
Normalization normalization_from_string(const std::string& name);

// Distance of a uniform receiver in the cluster ball; pdf d r^(d-1) / s^d.
struct RadialDistribution {
    int d = 2;
    double s = 1.0;
    double pdf(double r) const { return d * std::pow(r, d - 1) / std::pow(s, d); }
};

// E_R[fn(R)] by adaptive quadrature over [0, s].
double radial_expectation(const std::function<double(double)>& fn, int d, double s);

// Caches the lambda_t-independent jets of Delta_1 at each desired-link
// distance, so outage can be re-evaluated cheaply while a solver varies
// lambda_t.  Not thread safe; use one evaluator per thread.
class SuccessEvaluator {
  public:
    SuccessEvaluator(const NetworkConfig& config, double window = kInfiniteWindow);

    // Per-attempt success at distance r >= 1 for the given lambda_t.
    double success(double r, double lambda_t) const;

    const NetworkConfig& config() const { return config_; }

  private:
    NetworkConfig config_;
    double window_;
    double mu_u_;
    mutable std::unordered_map<std::uint64_t, TaylorJet> jets_;
};

// Multicast outage 1 - exp(-k E_R[(1 - p(R))^tau]).  `success_override`
// replaces the model per-attempt success p(r) when supplied (used by stub
// oracles in tests).
double outage_probability_analytic(
    const NetworkConfig& config, ClipPolicy clip = ClipPolicy::capped,
    double window = kInfiniteWindow,
    const std::function<double(double)>* success_override = nullptr);

struct ContentionSolution {
    double lambda_bar = 0.0;
    std::string method;        // closed-form | bisect-analytic | bisect-mc
    Normalization normalization = Normalization::proof_consistent;
    double a_hat_b = 1.0;
    double d_hat = 0.0;            // beta-independent large-argument constant
    double delta1_hat_beta = 0.0;  // literal divisor [D1(b,inf)-D1(b,a_hat)] * prod
    double achieved_outage = -1.0; // solvers only
    double rho = 0.0;
    bool premise_ok = true; // k >= epsilon^-(tau-1)
    std::vector<std::string> warnings;
};

// Large-argument constant of Delta_1_hat / beta^xi:
// xi m^-xi prod_{j=1}^{m-1}(1 - xi/j) * Integral_0^inf t^(xi-1)(1-(t/(1+t))^m) dt.
double d_hat_constant(int m, double xi);

ContentionSolution max_contention_closed_form(const NetworkConfig& config,
                                              Normalization normalization =
                                                  Normalization::proof_consistent,
                                              double a_hat_b = 1.0);

struct SolverOptions {
    double tolerance = 1e-6;   // |outage - epsilon| target (analytic oracle)
    ClipPolicy clip = ClipPolicy::capped;
    double window = kInfiniteWindow;
    int max_iterations = 200;
    // Monte-Carlo oracle settings.
    std::uint64_t mc_trials = 20000;
    std::uint64_t mc_seed = 1;
    int mc_threads = 1;
    double mc_bias_tol = 1e-5;
};

enum class SolverOracle {
    analytic,
    monte_carlo,
};

// Bisection on lambda_t against the chosen outage oracle until the target
// epsilon is met.  Throws Error(bracket) when no sign change exists in the
// searched range.
ContentionSolution solve_max_contention(const NetworkConfig& config,
                                        SolverOracle oracle = SolverOracle::analytic,
                                        const SolverOptions& options = {});

} // namespace mtcap
