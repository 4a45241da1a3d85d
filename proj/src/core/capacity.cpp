// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "core/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/error.hpp"
#include "core/mathutil.hpp"
#include "core/montecarlo.hpp"

namespace mtcap {

double multicast_capacity(double b, double lambda_bar, double epsilon, int tau) {
    if (!(b > 0.0) || !(lambda_bar > 0.0)) throw_argument("multicast_capacity needs b, lambda_bar > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw_argument("epsilon must lie in (0,1)");
    if (tau < 1) throw_argument("tau must be >= 1");
    return b * lambda_bar * (1.0 - epsilon) / double(tau);
}

std::string to_string(Regime regime) {
    switch (regime) {
    case Regime::dense: return "dense";
    case Regime::large: return "large";
    default: return "large-dense";
    }
}

Regime regime_from_string(const std::string& name) {
    if (name == "dense") return Regime::dense;
    if (name == "large") return Regime::large;
    if (name == "large-dense") return Regime::large_dense;
    throw_config("regime must be \"dense\", \"large\" or \"large-dense\", got \"" + name + "\"");
}

NetworkConfig regime_config(Regime regime, double k, const NetworkConfig& base, double c) {
    if (!(k >= 1.0)) throw_argument("regime_config requires k >= 1");
    NetworkConfig config = base;
    const double mu_u = unit_ball_volume(config.d);
    switch (regime) {
    case Regime::dense: {
        const double mu_r = mu_u * std::pow(config.s, config.d);
        config.lambda_r = k / mu_r;
        break;
    }
    case Regime::large: {
        config.s = std::pow(k / (config.lambda_r * mu_u), 1.0 / config.d);
        break;
    }
    case Regime::large_dense: {
        if (!(c > 0.0)) throw_argument("large-dense proportionality c must be positive");
        const double mu_r = std::sqrt(k / c);
        config.lambda_r = std::sqrt(k * c);
        config.s = std::pow(mu_r / mu_u, 1.0 / config.d);
        break;
    }
    }
    if (config.s < 1.0)
        throw_config("regime parameterization requires cluster radius s >= 1 (got s = " +
                      std::to_string(config.s) + ")");
    config.validate();
    return config;
}

namespace {

double b_proxy(double mu_r, double lambda_bar) { return std::log1p(1.0 / (mu_r * lambda_bar)); }

} // namespace

SweepResult sweep(Regime regime, const std::vector<double>& k_grid, const NetworkConfig& base,
                  const SweepOptions& options) {
    SweepResult result;
    result.regime = regime;
    if (k_grid.empty()) {
        result.warnings.push_back("empty k grid: nothing to sweep");
        return result;
    }
    for (double k : k_grid) {
        SweepRow row;
        row.regime = to_string(regime);
        row.k = k;
        try {
            const NetworkConfig config = regime_config(regime, k, base, options.large_dense_c);
            const DerivedParams derived = derive_params(config);
            row.s = config.s;
            row.lambda_r = config.lambda_r;

            const ContentionSolution proof =
                max_contention_closed_form(config, Normalization::proof_consistent);
            const ContentionSolution literal =
                max_contention_closed_form(config, Normalization::literal);
            row.lambda_bar_proof = proof.lambda_bar;
            row.lambda_bar_literal = literal.lambda_bar;
            row.lambda_bar_closed = options.normalization == Normalization::proof_consistent
                                        ? proof.lambda_bar
                                        : literal.lambda_bar;
            row.rho = proof.rho;
            if (!proof.premise_ok) row.flags += "premise;";

            if (options.solve) {
                SolverOptions solver_options;
                solver_options.clip = options.clip;
                const ContentionSolution solved =
                    solve_max_contention(config, SolverOracle::analytic, solver_options);
                row.lambda_bar_solved = solved.lambda_bar;
            }

            row.b_proxy = b_proxy(derived.mu_r, row.lambda_bar_closed);
            if (options.mc_rate) {
                NetworkConfig rate_config = config;
                rate_config.lambda_t = row.lambda_bar_closed;
                McOptions mc;
                mc.seed = options.seed;
                mc.trials = options.mc_trials;
                mc.threads = options.threads;
                mc.clip = options.clip;
                // Relative truncation rule: resolve the window against the
                // typical interference scale (mu_u lambda)^(alpha/d) so the
                // omitted tail stays a fixed fraction of it.
                const double mu_u = unit_ball_volume(config.d);
                mc.bias_tol =
                    0.01 * std::pow(mu_u * rate_config.lambda_t, config.alpha / config.d);
                row.b_mc = estimate_rate(rate_config, mc).b;
            }
            const double b_used = options.mc_rate && row.b_mc ? *row.b_mc : row.b_proxy;
            row.c_eps =
                multicast_capacity(b_used, row.lambda_bar_closed, config.epsilon, config.tau);
        } catch (const Error& e) {
            row.failed = true;
            row.flags += std::string("error:") + e.what() + ";";
            result.warnings.push_back("row k=" + std::to_string(k) + " failed: " + e.what());
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string csv =
        "regime,k,s,lambda_r,lambda_bar_closed,lambda_bar_solved,b_proxy,b_mc,C_eps,rho,flags\n";
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const SweepRow& row : result.rows) {
        csv += row.regime + "," + num(row.k) + "," + num(row.s) + "," + num(row.lambda_r) + "," +
               num(row.lambda_bar_closed) + "," +
               (row.lambda_bar_solved ? num(*row.lambda_bar_solved) : "") + "," +
               num(row.b_proxy) + "," + (row.b_mc ? num(*row.b_mc) : "") + "," +
               num(row.c_eps) + "," + num(row.rho) + "," + row.flags + "\n";
    }
    return csv;
}

ScalingFit fit_exponent(const SweepResult& result) {
    std::vector<double> x, y;
    double k_min = 0.0, k_max = 0.0;
    for (const SweepRow& row : result.rows) {
        if (row.failed || !(row.c_eps > 0.0) || !(row.k > 1.0)) continue;
        x.push_back(std::log(row.k));
        // Divide the log k factor out before fitting the power law.
        y.push_back(std::log(row.c_eps) - std::log(std::log(row.k)));
        k_min = k_min == 0.0 ? row.k : std::min(k_min, row.k);
        k_max = std::max(k_max, row.k);
    }
    if (x.size() < 5) throw_numeric("scaling fit needs at least five usable sweep rows");
    if (!(k_max / k_min >= 100.0))
        throw_numeric("scaling fit needs the k grid to span at least two decades");
    const LineFit fit = fit_line(x, y);
    ScalingFit out;
    out.exponent = fit.slope;
    out.intercept = fit.intercept;
    out.residual_rms = fit.residual_rms;
    out.points = fit.n;
    out.k_min = k_min;
    out.k_max = k_max;
    return out;
}

UnicastReport unicast_reduction_check(const NetworkConfig& base) {
    NetworkConfig config = base;
    if (config.d != 2) throw_argument("unicast reduction check is defined for d = 2");
    config.tau = 1;
    const double mu_u = unit_ball_volume(config.d);

    auto lambda_bar = [&](const NetworkConfig& c, Normalization norm) {
        return max_contention_closed_form(c, norm).lambda_bar;
    };
    auto with_unit_k = [&](NetworkConfig c) {
        c.lambda_r = 1.0 / (mu_u * std::pow(c.s, c.d)); // k = 1
        return c;
    };

    UnicastReport report;
    {
        std::vector<double> xs, ys;
        for (double eps : {0.01, 0.02, 0.05, 0.1, 0.15, 0.2}) {
            NetworkConfig c = with_unit_k(config);
            c.epsilon = eps;
            xs.push_back(std::log(eps));
            ys.push_back(std::log(lambda_bar(c, Normalization::proof_consistent)));
        }
        report.epsilon_slope = fit_line(xs, ys).slope;
        report.epsilon_pass = std::abs(report.epsilon_slope - 1.0) <= 0.02;
    }
    {
        std::vector<double> xs, ys;
        for (double s : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
            NetworkConfig c = config;
            c.s = s;
            c = with_unit_k(c);
            xs.push_back(std::log(s));
            ys.push_back(std::log(lambda_bar(c, Normalization::proof_consistent)));
        }
        report.s_slope = fit_line(xs, ys).slope;
        report.s_pass = std::abs(report.s_slope + 2.0) <= 0.05;
    }
    {
        std::vector<double> xs, yp, yl;
        for (double beta : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            NetworkConfig c = with_unit_k(config);
            c.beta = beta;
            xs.push_back(std::log(beta));
            yp.push_back(std::log(lambda_bar(c, Normalization::proof_consistent)));
            yl.push_back(std::log(lambda_bar(c, Normalization::literal)));
        }
        report.beta_slope_proof = fit_line(xs, yp).slope;
        report.beta_slope_literal = fit_line(xs, yl).slope;
    }
    return report;
}

RetxStudy retransmission_study(const NetworkConfig& base, const std::vector<int>& tau_grid,
                               double k, const SweepOptions& options) {
    if (tau_grid.empty()) throw_argument("retransmission study needs a non-empty tau grid");
    RetxStudy study;
    double best = -1.0;
    for (int tau : tau_grid) {
        if (tau < 1) throw_argument("tau grid entries must be >= 1");
        NetworkConfig config = regime_config(Regime::dense, k, base, options.large_dense_c);
        config.tau = tau;
        const DerivedParams derived = derive_params(config);
        const ContentionSolution solution =
            max_contention_closed_form(config, options.normalization);
        RetxRow row;
        row.tau = tau;
        row.lambda_bar = solution.lambda_bar;
        row.b = b_proxy(derived.mu_r, solution.lambda_bar);
        row.c_eps = multicast_capacity(row.b, row.lambda_bar, config.epsilon, tau);
        row.premise_ok = solution.premise_ok;
        if (row.c_eps > best) {
            best = row.c_eps;
            study.argmax_tau = tau;
        }
        study.rows.push_back(row);
    }
    return study;
}

std::string retx_to_csv(const RetxStudy& study) {
    std::string csv = "tau,lambda_bar,b_proxy,C_eps,premise_ok\n";
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const RetxRow& row : study.rows) {
        csv += std::to_string(row.tau) + "," + num(row.lambda_bar) + "," + num(row.b) + "," +
               num(row.c_eps) + "," + (row.premise_ok ? "1" : "0") + "\n";
    }
    return csv;
}

} // namespace mtcap
