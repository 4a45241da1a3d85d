// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "core/outage.hpp"

#include <cmath>
#include <cstring>

#include "core/error.hpp"
#include "core/mathutil.hpp"
#include "core/montecarlo.hpp"
#include "core/quadrature.hpp"

namespace mtcap {

std::string to_string(Normalization norm) {
    return norm == Normalization::proof_consistent ? "proof-consistent" : "literal";
}

Normalization normalization_from_string(const std::string& name) {
    if (name == "proof" || name == "proof-consistent") return Normalization::proof_consistent;
    if (name == "literal") return Normalization::literal;
    throw_config("normalization must be \"proof\" or \"literal\", got \"" + name + "\"");
}

double radial_expectation(const std::function<double(double)>& fn, int d, double s) {
    if (!(s > 0.0)) throw_argument("radial_expectation requires s > 0");
    const double norm = d / std::pow(s, d);
    auto weighted = [&](double r) { return fn(r) * norm * std::pow(r, d - 1); };
    return integrate(weighted, 0.0, s);
}

SuccessEvaluator::SuccessEvaluator(const NetworkConfig& config, double window)
    : config_(config), window_(window), mu_u_(unit_ball_volume(config.d)) {}

double SuccessEvaluator::success(double r, double lambda_t) const {
    if (lambda_t == 0.0) return 1.0;
    const double a = double(config_.m) * config_.beta * std::pow(r, config_.alpha);
    std::uint64_t key;
    static_assert(sizeof(key) == sizeof(r));
    std::memcpy(&key, &r, sizeof(key));
    auto it = jets_.find(key);
    if (it == jets_.end()) {
        it = jets_
                 .emplace(key, delta1_jet(a, std::size_t(config_.m - 1), config_.m,
                                          config_.alpha, config_.d, window_))
                 .first;
    }
    const std::size_t order = std::size_t(config_.m - 1);
    const TaylorJet g =
        exp(it->second * (-mu_u_ * lambda_t)) / TaylorJet::variable(a, order);
    const double raw = a * std::pow(-a, double(order)) * g[order];
    return raw < 0.0 ? 0.0 : raw > 1.0 ? 1.0 : raw;
}

namespace {

double outage_from_expectation(double k, double expectation) {
    return -std::expm1(-k * expectation);
}

double miss_expectation(const NetworkConfig& config, double lambda_t, ClipPolicy clip,
                        const SuccessEvaluator& evaluator,
                        const std::function<double(double)>* success_override) {
    auto p_at = [&](double r) {
        if (success_override) return (*success_override)(r);
        return evaluator.success(r, lambda_t);
    };
    const int tau = config.tau;
    auto miss_pow = [tau](double p) {
        return p >= 1.0 ? 0.0 : std::exp(double(tau) * std::log1p(-p));
    };
    const double below_unit_mass = std::pow(config.s, -config.d);
    double expectation =
        clip == ClipPolicy::capped ? below_unit_mass * miss_pow(p_at(1.0)) : below_unit_mass;
    const double norm = config.d / std::pow(config.s, config.d);
    auto integrand = [&](double r) { return miss_pow(p_at(r)) * norm * std::pow(r, config.d - 1); };
    if (config.s > 1.0) expectation += integrate(integrand, 1.0, config.s);
    return expectation;
}

} // namespace

double outage_probability_analytic(const NetworkConfig& config, ClipPolicy clip,
                                   double window,
                                   const std::function<double(double)>* success_override) {
    config.validate();
    if (config.lambda_t == 0.0 && !success_override &&
        clip == ClipPolicy::capped)
        return 0.0;
    const DerivedParams derived = derive_params(config);
    SuccessEvaluator evaluator(config, window);
    const double expectation =
        miss_expectation(config, config.lambda_t, clip, evaluator, success_override);
    return outage_from_expectation(derived.k, expectation);
}

double d_hat_constant(int m, double xi) {
    if (m < 1) throw_argument("d_hat_constant requires m >= 1");
    if (!(xi > 0.0 && xi < 1.0)) throw_argument("d_hat_constant requires xi in (0,1)");
    ShotNoiseQuery q;
    q.m = m;
    // Reuse delta1 at phi = m so the integration range is exactly [1, inf),
    // then add the head [0, 1] by direct quadrature: the constant is
    // Integral_0^inf t^(xi-1)(1 - (t/(1+t))^m) dt.
    auto integrand = [m, xi](double t) {
        return std::pow(t, xi - 1.0) *
               -std::expm1(double(m) * std::log1p(-1.0 / (1.0 + t)));
    };
    double total = integrate(integrand, 0.0, 64.0);
    // Tail beyond 64 via the same series used by delta1.
    double coeff = 1.0;
    double tail = 0.0;
    for (int i = 1; i <= 400; ++i) {
        coeff *= double(m + i - 1) / double(i);
        const double term =
            (i % 2 == 1 ? 1.0 : -1.0) * coeff * std::pow(64.0, xi - i) / (double(i) - xi);
        tail += term;
        if (std::abs(term) <= 1e-16 * std::abs(tail) + 1e-300) break;
    }
    total += tail;
    double product = 1.0;
    for (int j = 1; j < m; ++j) product *= 1.0 - xi / double(j);
    return xi * std::pow(double(m), -xi) * product * total;
}

namespace {

double falling_product(int m, double xi) {
    double product = 1.0;
    for (int j = 1; j < m; ++j) product *= 1.0 - xi / double(j);
    return product;
}

} // namespace

ContentionSolution max_contention_closed_form(const NetworkConfig& config,
                                              Normalization normalization, double a_hat_b) {
    config.validate();
    if (a_hat_b > 1.0) throw_argument("a_hat_b must be <= 1");
    if (!(a_hat_b > 0.0)) throw_argument("a_hat_b must be positive");
    const DerivedParams derived = derive_params(config);
    const double xi = derived.xi;
    const int tau = config.tau;
    const double eps_root = std::pow(config.epsilon * (tau + 1), 1.0 / tau);

    ContentionSolution out;
    out.method = "closed-form";
    out.normalization = normalization;
    out.a_hat_b = a_hat_b;
    out.d_hat = d_hat_constant(config.m, xi);
    out.rho = eps_root / double(tau) / double(tau);

    // Literal divisor [Delta_1(beta, inf) - Delta_1(beta, a_hat)] prod(1 - xi/j);
    // a_hat <= 1 makes the subtracted term vanish.
    ShotNoiseQuery q;
    q.phi = config.beta;
    q.m = config.m;
    q.alpha = config.alpha;
    q.d = config.d;
    q.window = kInfiniteWindow;
    out.delta1_hat_beta = delta1(q) * falling_product(config.m, xi);

    const double divisor = normalization == Normalization::proof_consistent
                               ? std::pow(config.beta, xi) * out.d_hat
                               : std::pow(config.beta, xi) * out.delta1_hat_beta;
    out.lambda_bar = eps_root / (derived.mu_r * std::pow(derived.k, 1.0 / tau) * divisor);

    const double premise = std::pow(config.epsilon, -(double(tau) - 1.0));
    out.premise_ok = derived.k >= premise;
    if (!out.premise_ok)
        out.warnings.push_back("closed form premise k >= epsilon^-(tau-1) violated: k = " +
                               std::to_string(derived.k) + " < " + std::to_string(premise));
    return out;
}

namespace {

double mc_outage_at(const NetworkConfig& config, double lambda_t, const SolverOptions& opts,
                    std::uint64_t iteration, double* ci_half) {
    NetworkConfig local = config;
    local.lambda_t = lambda_t;
    McOptions mc;
    mc.seed = opts.mc_seed + 0x9E3779B97F4A7C15ull * iteration;
    mc.trials = opts.mc_trials;
    mc.threads = opts.mc_threads;
    mc.clip = opts.clip;
    mc.bias_tol = opts.mc_bias_tol;
    const OutageEstimate est = estimate_outage(local, mc);
    *ci_half = est.ci_half;
    return est.probability;
}

} // namespace

ContentionSolution solve_max_contention(const NetworkConfig& config, SolverOracle oracle,
                                        const SolverOptions& opts) {
    config.validate();
    const double epsilon = config.epsilon;
    const ContentionSolution closed =
        max_contention_closed_form(config, Normalization::proof_consistent);

    SuccessEvaluator evaluator(config, opts.window);
    const DerivedParams derived = derive_params(config);
    auto analytic_outage = [&](double lambda_t) {
        const double expectation =
            miss_expectation(config, lambda_t, opts.clip, evaluator, nullptr);
        return outage_from_expectation(derived.k, expectation);
    };

    ContentionSolution out;
    out.normalization = closed.normalization;
    out.d_hat = closed.d_hat;
    out.delta1_hat_beta = closed.delta1_hat_beta;
    out.a_hat_b = closed.a_hat_b;
    out.rho = closed.rho;
    out.premise_ok = closed.premise_ok;

    if (oracle == SolverOracle::analytic) {
        out.method = "bisect-analytic";
        double lo = closed.lambda_bar;
        int guard = 0;
        while (analytic_outage(lo) >= epsilon) {
            lo /= 10.0;
            if (++guard > 40)
                throw_bracket("outage stays above epsilon for arbitrarily small lambda_t");
        }
        double hi = std::max(closed.lambda_bar, lo * 10.0);
        guard = 0;
        while (analytic_outage(hi) <= epsilon) {
            hi *= 10.0;
            if (++guard > 40)
                throw_bracket("outage never reaches epsilon within the search range");
        }
        double mid = 0.5 * (lo + hi);
        for (int i = 0; i < opts.max_iterations; ++i) {
            mid = 0.5 * (lo + hi);
            const double value = analytic_outage(mid);
            if (std::abs(value - epsilon) <= opts.tolerance) break;
            (value < epsilon ? lo : hi) = mid;
        }
        out.lambda_bar = mid;
        out.achieved_outage = analytic_outage(mid);
        if (std::abs(out.achieved_outage - epsilon) > opts.tolerance)
            out.warnings.push_back("bisection stopped before reaching the outage tolerance");
        return out;
    }

    out.method = "bisect-mc";
    double ci_half = 0.0;
    double lo = closed.lambda_bar;
    int guard = 0;
    std::uint64_t iteration = 0;
    while (mc_outage_at(config, lo, opts, iteration++, &ci_half) >= epsilon) {
        lo /= 10.0;
        if (++guard > 20)
            throw_bracket("MC outage stays above epsilon for arbitrarily small lambda_t");
    }
    double hi = std::max(closed.lambda_bar, lo * 10.0);
    guard = 0;
    while (mc_outage_at(config, hi, opts, iteration++, &ci_half) <= epsilon) {
        hi *= 10.0;
        if (++guard > 20) throw_bracket("MC outage never reaches epsilon in the search range");
    }
    double mid = 0.5 * (lo + hi);
    double value = epsilon;
    for (int i = 0; i < opts.max_iterations; ++i) {
        mid = 0.5 * (lo + hi);
        value = mc_outage_at(config, mid, opts, iteration++, &ci_half);
        if (std::abs(value - epsilon) <= ci_half) break;
        (value < epsilon ? lo : hi) = mid;
    }
    out.lambda_bar = mid;
    out.achieved_outage = value;
    if (std::abs(value - epsilon) > ci_half)
        out.warnings.push_back("MC bisection stopped before the CI bracketed epsilon");
    return out;
}

} // namespace mtcap
