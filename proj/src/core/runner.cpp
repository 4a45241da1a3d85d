// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "core/runner.hpp"

#include <cmath>
#include <set>

#include "core/capacity.hpp"
#include "core/error.hpp"
#include "core/mathutil.hpp"
#include "core/montecarlo.hpp"
#include "core/outage.hpp"
#include "core/pointprocess.hpp"
#include "core/shotnoise.hpp"
#include "core/version.hpp"

namespace mtcap {
namespace {

using nlohmann::json;

struct RunOptions {
    std::uint64_t seed = 1;
    std::uint64_t trials = 10000;
    int threads = 1;
    InterferenceMode mode = InterferenceMode::iid;
    ClipPolicy clip = ClipPolicy::capped;
    Normalization normalization = Normalization::proof_consistent;
    std::string oracle; // command-specific default
    double bias_tol = 1e-4;
    double r_sim = 0.0;
    double a_hat_b = 1.0;
    double tolerance = 1e-6;
    double window = kInfiniteWindow;
    bool window_set = false;
    std::vector<double> phi_grid = {1.0, 4.0, 16.0};
    std::vector<double> r_grid;
    std::vector<double> k_grid;
    std::vector<double> lambda_t_grid;
    std::vector<int> tau_grid;
    std::string regime = "dense";
    double large_dense_c = 1.0;
    int bins = 10;
    std::string b_method = "proxy";
    bool bits = false;
    bool per_receiver = false;
    std::int64_t fixed_receivers = -1;
    bool solve = false;
    bool mc_rate = false;
    bool dump_trials = false;
    double k_override = 0.0;
};

const std::set<std::string> kOptionKeys = {
    "seed",       "trials",   "threads",   "mode",        "clip",
    "normalization", "oracle", "bias_tol", "r_sim",       "a_hat_b",
    "tolerance",  "window",   "phi",       "r",           "k_grid",
    "lambda_t_grid", "tau_grid", "regime", "c",           "bins",
    "b_method",   "bits",     "per_receiver", "fixed_receivers",
    "solve",      "mc_rate",  "k",         "dump_trials"};

std::vector<double> to_double_vector(const json& node, const std::string& key) {
    if (!node.is_array()) throw_config("option \"" + key + "\" must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : node) {
        if (!v.is_number()) throw_config("option \"" + key + "\" must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

RunOptions parse_options(const std::string& text) {
    RunOptions opts;
    if (text.empty()) return opts;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw_config(std::string("options are not valid JSON: ") + e.what());
    }
    if (doc.is_null()) return opts;
    if (!doc.is_object()) throw_config("options must be a JSON object");
    for (const auto& item : doc.items())
        if (!kOptionKeys.count(item.key()))
            throw_config("unknown option \"" + item.key() + "\"");

    if (doc.contains("seed")) opts.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("trials")) opts.trials = doc["trials"].get<std::uint64_t>();
    if (doc.contains("threads")) opts.threads = doc["threads"].get<int>();
    if (doc.contains("mode"))
        opts.mode = interference_mode_from_string(doc["mode"].get<std::string>());
    if (doc.contains("clip")) opts.clip = clip_policy_from_string(doc["clip"].get<std::string>());
    if (doc.contains("normalization"))
        opts.normalization = normalization_from_string(doc["normalization"].get<std::string>());
    if (doc.contains("oracle")) opts.oracle = doc["oracle"].get<std::string>();
    if (doc.contains("bias_tol")) opts.bias_tol = doc["bias_tol"].get<double>();
    if (doc.contains("r_sim")) opts.r_sim = doc["r_sim"].get<double>();
    if (doc.contains("a_hat_b")) opts.a_hat_b = doc["a_hat_b"].get<double>();
    if (doc.contains("tolerance")) opts.tolerance = doc["tolerance"].get<double>();
    if (doc.contains("window")) {
        opts.window_set = true;
        if (doc["window"].is_string()) {
            if (doc["window"].get<std::string>() != "inf")
                throw_config("option \"window\" must be a number or \"inf\"");
        } else {
            opts.window = doc["window"].get<double>();
        }
    }
    if (doc.contains("phi")) opts.phi_grid = to_double_vector(doc["phi"], "phi");
    if (doc.contains("r")) opts.r_grid = to_double_vector(doc["r"], "r");
    if (doc.contains("k_grid")) opts.k_grid = to_double_vector(doc["k_grid"], "k_grid");
    if (doc.contains("lambda_t_grid"))
        opts.lambda_t_grid = to_double_vector(doc["lambda_t_grid"], "lambda_t_grid");
    if (doc.contains("tau_grid")) {
        for (double v : to_double_vector(doc["tau_grid"], "tau_grid"))
            opts.tau_grid.push_back(int(v));
    }
    if (doc.contains("regime")) opts.regime = doc["regime"].get<std::string>();
    if (doc.contains("c")) opts.large_dense_c = doc["c"].get<double>();
    if (doc.contains("bins")) opts.bins = doc["bins"].get<int>();
    if (doc.contains("b_method")) opts.b_method = doc["b_method"].get<std::string>();
    if (doc.contains("bits")) opts.bits = doc["bits"].get<bool>();
    if (doc.contains("per_receiver")) opts.per_receiver = doc["per_receiver"].get<bool>();
    if (doc.contains("fixed_receivers"))
        opts.fixed_receivers = doc["fixed_receivers"].get<std::int64_t>();
    if (doc.contains("solve")) opts.solve = doc["solve"].get<bool>();
    if (doc.contains("mc_rate")) opts.mc_rate = doc["mc_rate"].get<bool>();
    if (doc.contains("dump_trials")) opts.dump_trials = doc["dump_trials"].get<bool>();
    if (doc.contains("k")) opts.k_override = doc["k"].get<double>();
    return opts;
}

McOptions mc_options(const RunOptions& opts) {
    McOptions mc;
    mc.seed = opts.seed;
    mc.trials = opts.trials;
    mc.threads = opts.threads;
    mc.mode = opts.mode;
    mc.clip = opts.clip;
    mc.bias_tol = opts.bias_tol;
    mc.r_sim = opts.r_sim;
    mc.per_receiver_interference = opts.per_receiver;
    mc.fixed_receiver_count = opts.fixed_receivers;
    return mc;
}

// Snapshot of the options that determine the numbers; the thread count is
// deliberately absent (results are scheduling-invariant) and lives in the
// manifest instead.
json options_snapshot(const RunOptions& opts) {
    json out;
    out["seed"] = opts.seed;
    out["trials"] = opts.trials;
    out["mode"] = to_string(opts.mode);
    out["clip"] = to_string(opts.clip);
    out["normalization"] = to_string(opts.normalization);
    if (!opts.oracle.empty()) out["oracle"] = opts.oracle;
    out["bias_tol"] = opts.bias_tol;
    if (opts.r_sim > 0.0) out["r_sim"] = opts.r_sim;
    out["a_hat_b"] = opts.a_hat_b;
    out["bits"] = opts.bits;
    return out;
}

json derived_json(const DerivedParams& derived) {
    return json{{"xi", derived.xi},
                {"mu_u", derived.mu_u},
                {"mu_r", derived.mu_r},
                {"k", derived.k}};
}

json contention_json(const ContentionSolution& s) {
    json out;
    out["lambda_bar"] = s.lambda_bar;
    out["method"] = s.method;
    out["normalization"] = to_string(s.normalization);
    out["a_hat_b"] = s.a_hat_b;
    out["d_hat"] = s.d_hat;
    out["delta1_hat_beta"] = s.delta1_hat_beta;
    out["rho"] = s.rho;
    out["premise_ok"] = s.premise_ok;
    if (s.achieved_outage >= 0.0) out["achieved_outage"] = s.achieved_outage;
    if (!s.warnings.empty()) out["warnings"] = s.warnings;
    return out;
}

// The rate window follows the typical interference scale (mu_u lambda)^(alpha/d)
// rather than a fixed absolute bias, so the omitted tail stays a fixed
// fraction of it at any intensity.
double rate_bias_tol(const NetworkConfig& config) {
    const double mu_u = unit_ball_volume(config.d);
    return 0.01 * std::pow(mu_u * config.lambda_t, config.alpha / config.d);
}

double to_rate_units(double nats, bool bits) { return bits ? nats / std::numbers::ln2 : nats; }

json cmd_validate(const NetworkConfig& config, const RunOptions& opts,
                  std::vector<std::string>& warnings) {
    json checks = json::array();
    auto add = [&checks](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
    };
    config.validate(); // throws with a named constraint on failure
    add("invariants", true, "all config invariants hold");

    // Fast self-consistency: three-way Laplace agreement at m = 1 on three
    // transform points, independent of the configured fading shape.
    NetworkConfig probe = config;
    probe.m = 1;
    probe.fading_scale = FadingScale::unit_mean;
    const double window =
        truncation_radius(probe.lambda_t, probe.alpha, probe.d, opts.bias_tol);
    bool all_ok = true;
    for (double phi : {1.0, 4.0, 16.0}) {
        ShotNoiseQuery q;
        q.phi = phi;
        q.window = window;
        q.lambda = probe.lambda_t;
        q.m = 1;
        q.alpha = probe.alpha;
        q.d = probe.d;
        const double closed = laplace_functional(q);
        const double direct = laplace_pgfl_direct(phi, probe.lambda_t, 1, probe.alpha,
                                                  probe.d, window);
        const double gap = std::abs(closed - direct) / direct;
        const bool pair_ok = gap <= 1e-6;
        double mc_gap_sigma = 0.0;
        bool mc_ok = true;
        if (probe.lambda_t > 0.0) {
            McOptions mc = mc_options(opts);
            mc.trials = std::min<std::uint64_t>(opts.trials, 20000);
            const InterferenceStats stats = estimate_interference(probe, {phi}, mc);
            const double se = std::max(stats.laplace[0].se, 1e-12);
            mc_gap_sigma = std::abs(stats.laplace[0].value - closed) / se;
            mc_ok = mc_gap_sigma <= 3.0;
        }
        const bool ok = pair_ok && mc_ok;
        all_ok = all_ok && ok;
        add("laplace-threeway-phi-" + std::to_string(int(phi)), ok,
            "closed vs direct rel gap " + std::to_string(gap) + ", MC gap " +
                std::to_string(mc_gap_sigma) + " sigma");
    }
    if (!all_ok) warnings.push_back("Laplace self-consistency failed; see checks");
    return json{{"ok", all_ok}, {"checks", checks}};
}

json cmd_laplace(const NetworkConfig& config, const RunOptions& opts,
                 std::vector<std::string>& warnings, std::string& csv) {
    const double gain_mean = config.gain_mean();
    const double window =
        opts.window_set ? opts.window
                        : truncation_radius(config.lambda_t, config.alpha, config.d,
                                            opts.bias_tol);
    const bool with_mc = opts.oracle == "mc" && config.lambda_t > 0.0;
    InterferenceStats stats;
    if (with_mc) {
        McOptions mc = mc_options(opts);
        mc.r_sim = std::isinf(window) ? 0.0 : window;
        stats = estimate_interference(config, opts.phi_grid, mc);
    }

    json points = json::array();
    csv = "phi,delta1,laplace_closed,laplace_pgfl,rel_gap,mc_value,mc_se\n";
    char buf[256];
    for (std::size_t i = 0; i < opts.phi_grid.size(); ++i) {
        const double phi = opts.phi_grid[i];
        ShotNoiseQuery q;
        q.phi = phi * gain_mean;
        q.window = window;
        q.lambda = config.lambda_t;
        q.m = config.m;
        q.alpha = config.alpha;
        q.d = config.d;
        const double d1 = delta1(q);
        const double closed = laplace_functional(q);
        const double direct = laplace_pgfl_direct(phi * gain_mean, config.lambda_t, config.m,
                                                  config.alpha, config.d, window);
        const double gap = std::abs(closed - direct) / std::max(direct, 1e-300);
        if (gap > 1e-6)
            warnings.push_back("Laplace closed form and PGFL route disagree at phi = " +
                               std::to_string(phi) + " (rel gap " + std::to_string(gap) +
                               "); the PGFL route is authoritative");
        json point;
        point["phi"] = phi;
        point["delta1"] = d1;
        point["laplace_closed"] = closed;
        point["laplace_pgfl"] = direct;
        point["rel_gap"] = gap;
        if (with_mc) {
            point["mc_value"] = stats.laplace[i].value;
            point["mc_se"] = stats.laplace[i].se;
        }
        points.push_back(point);
        if (with_mc)
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          phi, d1, closed, direct, gap, stats.laplace[i].value,
                          stats.laplace[i].se);
        else
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,,\n", phi, d1,
                          closed, direct, gap);
        csv += buf;
    }
    json out;
    out["window"] = std::isinf(window) ? json("inf") : json(window);
    out["points"] = points;
    return out;
}

json cmd_success_prob(const NetworkConfig& config, const RunOptions& opts,
                      std::vector<std::string>& warnings, std::string& csv) {
    std::vector<double> grid = opts.r_grid;
    if (grid.empty()) {
        const int n = 10;
        for (int i = 0; i < n; ++i)
            grid.push_back(1.0 + (config.s - 1.0) * double(i) / double(n - 1));
    }
    const double window = opts.window_set ? opts.window : kInfiniteWindow;
    json points = json::array();
    csv = "r,p,lambda_c_bound\n";
    char buf[160];
    for (double r : grid) {
        const double r_eff = opts.clip == ClipPolicy::capped ? std::max(r, 1.0) : r;
        double p = 0.0;
        double bound = 0.0;
        if (opts.clip == ClipPolicy::strict_eq1 && r < 1.0) {
            p = 0.0;
            bound = 0.0;
        } else {
            p = per_attempt_success(r_eff, config, window, &warnings);
            bound = connected_intensity_bound(r_eff, config.tau, config, window, nullptr);
        }
        points.push_back(json{{"r", r}, {"p", p}, {"lambda_c_bound", bound}});
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", r, p, bound);
        csv += buf;
    }
    return json{{"window", std::isinf(window) ? json("inf") : json(window)},
                {"points", points}};
}

json cmd_outage(const NetworkConfig& config, const RunOptions& opts,
                std::vector<std::string>& warnings, std::string& csv) {
    json out;
    const double analytic = outage_probability_analytic(config, opts.clip, opts.window);
    out["analytic"] = analytic;
    if (opts.oracle == "mc") {
        const McOptions mc = mc_options(opts);
        const OutageEstimate est = estimate_outage(config, mc);
        out["mc"] = json{{"probability", est.probability},
                         {"ci_half", est.ci_half},
                         {"trials", est.trials},
                         {"mode", to_string(est.mode)},
                         {"clip", to_string(est.clip)},
                         {"r_sim", resolve_window(config, mc)}};
        if (std::abs(est.probability - analytic) >
            std::max(0.1 * analytic, 3.0 * est.ci_half))
            warnings.push_back("MC outage and the analytic value disagree beyond the "
                               "expected band; check the truncation window");
        if (opts.dump_trials) csv = trial_summary_csv(config, mc);
    }
    return out;
}

json cmd_lambda_max(const NetworkConfig& config, const RunOptions& opts,
                    std::vector<std::string>& warnings) {
    const std::string oracle = opts.oracle.empty() ? "closed" : opts.oracle;
    json out;
    const ContentionSolution closed =
        max_contention_closed_form(config, opts.normalization, opts.a_hat_b);
    out["closed_form"] = contention_json(closed);
    for (const std::string& w : closed.warnings) warnings.push_back(w);
    if (oracle == "closed") {
        out["solution"] = out["closed_form"];
    } else if (oracle == "analytic" || oracle == "mc") {
        SolverOptions solver;
        solver.tolerance = opts.tolerance;
        solver.clip = opts.clip;
        solver.window = opts.window;
        solver.mc_trials = opts.trials;
        solver.mc_seed = opts.seed;
        solver.mc_threads = opts.threads;
        solver.mc_bias_tol = opts.bias_tol;
        const ContentionSolution solved = solve_max_contention(
            config, oracle == "analytic" ? SolverOracle::analytic : SolverOracle::monte_carlo,
            solver);
        out["solution"] = contention_json(solved);
        for (const std::string& w : solved.warnings) warnings.push_back(w);
    } else {
        throw_config("lambda-max oracle must be \"closed\", \"analytic\" or \"mc\"");
    }
    return out;
}

json cmd_rate(const NetworkConfig& config, const RunOptions& opts,
              std::vector<std::string>& warnings, std::string& csv) {
    json out;
    auto run_point = [&](double lambda_t) {
        NetworkConfig point = config;
        point.lambda_t = lambda_t;
        McOptions mc = mc_options(opts);
        if (mc.r_sim <= 0.0) mc.bias_tol = std::min(opts.bias_tol, rate_bias_tol(point));
        const RateEstimate est = estimate_rate(point, mc);
        if (est.discard_fraction_flagged)
            warnings.push_back("more than 1% of rate trials had zero interference at "
                               "lambda_t = " + std::to_string(lambda_t));
        return est;
    };

    if (opts.lambda_t_grid.empty()) {
        const RateEstimate est = run_point(config.lambda_t);
        const RateBoundReport report = check_rate_bounds(est, config);
        out["b"] = to_rate_units(est.b, opts.bits);
        out["ci_half"] = to_rate_units(est.ci_half, opts.bits);
        out["trials_used"] = est.trials_used;
        out["discarded_zero_interference"] = est.discarded_zero_interference;
        out["bound_reference"] = to_rate_units(report.lower_reference, opts.bits);
        out["bound_ratio"] = report.ratio;
        out["in_band"] = report.in_band;
        out["units"] = opts.bits ? "bits" : "nats";
        return out;
    }

    json rows = json::array();
    csv = "lambda_t,b,ci_half,bound_reference,ratio,in_band,discarded\n";
    char buf[256];
    double min_ratio = 1e300, max_excess = -1e300;
    double prev_b = 1e300;
    bool monotone = true;
    for (double lambda_t : opts.lambda_t_grid) {
        NetworkConfig point = config;
        point.lambda_t = lambda_t;
        const RateEstimate est = run_point(lambda_t);
        const RateBoundReport report = check_rate_bounds(est, point);
        min_ratio = std::min(min_ratio, report.ratio);
        max_excess = std::max(max_excess, est.b - report.lower_reference);
        if (est.b > prev_b + 1e-12) monotone = false;
        prev_b = est.b;
        rows.push_back(json{{"lambda_t", lambda_t},
                            {"b", to_rate_units(est.b, opts.bits)},
                            {"ci_half", to_rate_units(est.ci_half, opts.bits)},
                            {"bound_reference", to_rate_units(report.lower_reference, opts.bits)},
                            {"ratio", report.ratio},
                            {"in_band", report.in_band},
                            {"discarded", est.discarded_zero_interference}});
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%d,%llu\n", lambda_t,
                      to_rate_units(est.b, opts.bits), to_rate_units(est.ci_half, opts.bits),
                      to_rate_units(report.lower_reference, opts.bits), report.ratio,
                      report.in_band ? 1 : 0,
                      static_cast<unsigned long long>(est.discarded_zero_interference));
        csv += buf;
    }
    out["rows"] = rows;
    out["delta_hat"] = min_ratio;         // smallest observed b / L ratio
    out["max_excess_over_bound"] = max_excess; // fitted additive constant
    out["monotone_decreasing"] = monotone;
    out["units"] = opts.bits ? "bits" : "nats";
    return out;
}

json cmd_mtc(const NetworkConfig& config, const RunOptions& opts,
             std::vector<std::string>& warnings) {
    const std::string oracle = opts.oracle.empty() ? "closed" : opts.oracle;
    ContentionSolution solution;
    if (oracle == "closed") {
        solution = max_contention_closed_form(config, opts.normalization, opts.a_hat_b);
    } else {
        SolverOptions solver;
        solver.tolerance = opts.tolerance;
        solver.clip = opts.clip;
        solver.mc_trials = opts.trials;
        solver.mc_seed = opts.seed;
        solver.mc_threads = opts.threads;
        solution = solve_max_contention(
            config, oracle == "analytic" ? SolverOracle::analytic : SolverOracle::monte_carlo,
            solver);
    }
    for (const std::string& w : solution.warnings) warnings.push_back(w);

    const DerivedParams derived = derive_params(config);
    double b = 0.0;
    std::string b_method = opts.b_method;
    if (b_method == "mc") {
        NetworkConfig rate_config = config;
        rate_config.lambda_t = solution.lambda_bar;
        McOptions mc = mc_options(opts);
        if (mc.r_sim <= 0.0) mc.bias_tol = std::min(opts.bias_tol, rate_bias_tol(rate_config));
        b = estimate_rate(rate_config, mc).b;
    } else if (b_method == "proxy") {
        b = std::log1p(1.0 / (derived.mu_r * solution.lambda_bar));
    } else {
        throw_config("b_method must be \"proxy\" or \"mc\"");
    }

    json out;
    out["lambda_bar"] = contention_json(solution);
    out["b"] = json{{"method", b_method}, {"value", to_rate_units(b, opts.bits)}};
    out["c_eps"] =
        to_rate_units(multicast_capacity(b, solution.lambda_bar, config.epsilon, config.tau),
                      opts.bits);
    out["rho"] = solution.rho;
    out["units"] = opts.bits ? "bits" : "nats";
    return out;
}

json cmd_sweep(const NetworkConfig& config, const RunOptions& opts,
               std::vector<std::string>& warnings, std::string& csv) {
    if (opts.k_grid.empty()) throw_config("sweep requires a non-empty \"k_grid\" option");
    SweepOptions sweep_opts;
    sweep_opts.normalization = opts.normalization;
    sweep_opts.solve = opts.solve;
    sweep_opts.mc_rate = opts.mc_rate;
    sweep_opts.mc_trials = opts.trials;
    sweep_opts.seed = opts.seed;
    sweep_opts.threads = opts.threads;
    sweep_opts.clip = opts.clip;
    sweep_opts.large_dense_c = opts.large_dense_c;
    const SweepResult result = sweep(regime_from_string(opts.regime), opts.k_grid, config,
                                     sweep_opts);
    for (const std::string& w : result.warnings) warnings.push_back(w);
    csv = sweep_to_csv(result);

    json rows = json::array();
    for (const SweepRow& row : result.rows) {
        json r;
        r["regime"] = row.regime;
        r["k"] = row.k;
        r["s"] = row.s;
        r["lambda_r"] = row.lambda_r;
        r["lambda_bar_closed"] = row.lambda_bar_closed;
        r["lambda_bar_proof"] = row.lambda_bar_proof;
        r["lambda_bar_literal"] = row.lambda_bar_literal;
        if (row.lambda_bar_solved) r["lambda_bar_solved"] = *row.lambda_bar_solved;
        r["b_proxy"] = row.b_proxy;
        if (row.b_mc) r["b_mc"] = *row.b_mc;
        r["c_eps"] = row.c_eps;
        r["rho"] = row.rho;
        if (!row.flags.empty()) r["flags"] = row.flags;
        rows.push_back(r);
    }
    json out;
    out["regime"] = to_string(result.regime);
    out["rows"] = rows;
    try {
        const ScalingFit fit = fit_exponent(result);
        out["fit"] = json{{"exponent", fit.exponent},   {"intercept", fit.intercept},
                          {"residual_rms", fit.residual_rms}, {"points", fit.points},
                          {"k_min", fit.k_min},         {"k_max", fit.k_max}};
    } catch (const Error& e) {
        warnings.push_back(std::string("scaling fit skipped: ") + e.what());
    }
    return out;
}

json cmd_retx_study(const NetworkConfig& config, const RunOptions& opts,
                    std::vector<std::string>& warnings, std::string& csv) {
    std::vector<int> tau_grid = opts.tau_grid;
    if (tau_grid.empty())
        for (int tau = 1; tau <= 8; ++tau) tau_grid.push_back(tau);
    const DerivedParams derived = derive_params(config);
    const double k = opts.k_override > 0.0 ? opts.k_override : derived.k;
    SweepOptions sweep_opts;
    sweep_opts.normalization = opts.normalization;
    const RetxStudy study = retransmission_study(config, tau_grid, k, sweep_opts);
    csv = retx_to_csv(study);
    json rows = json::array();
    for (const RetxRow& row : study.rows) {
        rows.push_back(json{{"tau", row.tau},
                            {"lambda_bar", row.lambda_bar},
                            {"b_proxy", to_rate_units(row.b, opts.bits)},
                            {"c_eps", to_rate_units(row.c_eps, opts.bits)},
                            {"premise_ok", row.premise_ok}});
        if (!row.premise_ok)
            warnings.push_back("tau = " + std::to_string(row.tau) +
                               ": closed form premise k >= epsilon^-(tau-1) violated");
    }
    return json{{"k", k}, {"rows", rows}, {"argmax_tau", study.argmax_tau}};
}

} // namespace

const std::vector<std::string>& run_commands() {
    static const std::vector<std::string> commands = {
        "validate", "laplace", "success-prob", "outage", "lambda-max",
        "rate",     "mtc",     "sweep",        "retx-study"};
    return commands;
}

RunOutput run_command(const NetworkConfig& config, const std::string& command,
                      const std::string& options_json) {
    config.validate();
    const RunOptions opts = parse_options(options_json);
    RunOutput output;

    json result;
    if (command == "validate") {
        result = cmd_validate(config, opts, output.warnings);
    } else if (command == "laplace") {
        result = cmd_laplace(config, opts, output.warnings, output.csv);
    } else if (command == "success-prob") {
        result = cmd_success_prob(config, opts, output.warnings, output.csv);
    } else if (command == "outage") {
        result = cmd_outage(config, opts, output.warnings, output.csv);
    } else if (command == "lambda-max") {
        result = cmd_lambda_max(config, opts, output.warnings);
    } else if (command == "rate") {
        result = cmd_rate(config, opts, output.warnings, output.csv);
    } else if (command == "mtc") {
        result = cmd_mtc(config, opts, output.warnings);
    } else if (command == "sweep") {
        result = cmd_sweep(config, opts, output.warnings, output.csv);
    } else if (command == "retx-study") {
        result = cmd_retx_study(config, opts, output.warnings, output.csv);
    } else {
        throw_argument("unknown command \"" + command + "\"");
    }

    json envelope;
    envelope["schema_version"] = kResultSchemaVersion;
    envelope["tool"] = "mtcap";
    envelope["version"] = kVersion;
    envelope["command"] = command;
    envelope["config"] = json::parse(config.to_json());
    envelope["derived"] = derived_json(derive_params(config));
    envelope["options"] = options_snapshot(opts);
    envelope["result"] = result;
    envelope["warnings"] = output.warnings;
    output.result = envelope;
    return output;
}

} // namespace mtcap
