// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  Parses a config, dispatches one computation
// through the C API, and writes result.json, rows.csv (when tabular) and
// manifest.json into the output directory.
//
// Exit codes: 0 ok, 2 config error, 3 numeric failure, 4 bracket failure.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtcap/mtcap.h"
#include "sha256.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    std::uint64_t trials = 10000;
    int threads = 1;
    std::string mode = "iid";
    std::string clip = "capped";
    std::string normalization = "proof";
    std::string oracle;
    double bias_tol = 1e-4;
    double a_hat_b = 1.0;
    double tolerance = 1e-6;
    std::optional<double> window;
    std::optional<double> r_sim;
    bool bits = false;
    bool per_receiver = false;
    std::int64_t fixed_receivers = -1;
    // command specific
    std::vector<double> phi;
    std::vector<double> r_grid;
    std::vector<double> k_grid;
    std::vector<double> lambda_t_grid;
    std::vector<int> tau_grid;
    std::string regime = "dense";
    double large_dense_c = 1.0;
    std::optional<double> k_override;
    std::string b_method = "proxy";
    bool solve = false;
    bool mc_rate = false;
    bool dump_trials = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("config", flags.config_path, "Path to the config JSON")->required();
    cmd->add_option("--out", flags.out_dir, "Output directory (created if missing)");
    cmd->add_option("--seed", flags.seed, "Master seed for all random streams");
    cmd->add_option("--trials", flags.trials, "Monte-Carlo trial count");
    cmd->add_option("--threads", flags.threads, "Worker threads (results independent of this)");
    cmd->add_option("--mode", flags.mode, "Interference mode: iid | fixed")
        ->check(CLI::IsMember({"iid", "fixed"}));
    cmd->add_option("--clip", flags.clip, "Sub-unit receiver policy: capped | strict-eq1")
        ->check(CLI::IsMember({"capped", "strict-eq1"}));
    cmd->add_option("--normalization", flags.normalization,
                    "Closed-form normalization: proof | literal")
        ->check(CLI::IsMember({"proof", "literal"}));
    cmd->add_option("--bias-tol", flags.bias_tol, "Truncation bias budget for the window");
    cmd->add_flag("--bits", flags.bits, "Report rates in bits instead of nats");
    cmd->add_flag("--per-receiver", flags.per_receiver,
                  "Evaluate interference at each receiver instead of the origin");
    cmd->add_option("--fixed-receivers", flags.fixed_receivers,
                    "Deterministic receiver count instead of Poisson(k)");
}

json options_json(const CommonFlags& flags) {
    json opts;
    opts["seed"] = flags.seed;
    opts["trials"] = flags.trials;
    opts["threads"] = flags.threads;
    opts["mode"] = flags.mode;
    opts["clip"] = flags.clip;
    opts["normalization"] = flags.normalization;
    if (!flags.oracle.empty()) opts["oracle"] = flags.oracle;
    opts["bias_tol"] = flags.bias_tol;
    opts["a_hat_b"] = flags.a_hat_b;
    opts["tolerance"] = flags.tolerance;
    if (flags.window) opts["window"] = *flags.window;
    if (flags.r_sim) opts["r_sim"] = *flags.r_sim;
    if (flags.bits) opts["bits"] = true;
    if (flags.per_receiver) opts["per_receiver"] = true;
    if (flags.fixed_receivers >= 0) opts["fixed_receivers"] = flags.fixed_receivers;
    if (!flags.phi.empty()) opts["phi"] = flags.phi;
    if (!flags.r_grid.empty()) opts["r"] = flags.r_grid;
    if (!flags.k_grid.empty()) opts["k_grid"] = flags.k_grid;
    if (!flags.lambda_t_grid.empty()) opts["lambda_t_grid"] = flags.lambda_t_grid;
    if (!flags.tau_grid.empty()) opts["tau_grid"] = flags.tau_grid;
    if (flags.k_override) opts["k"] = *flags.k_override;
    opts["regime"] = flags.regime;
    opts["c"] = flags.large_dense_c;
    opts["b_method"] = flags.b_method;
    if (flags.solve) opts["solve"] = true;
    if (flags.mc_rate) opts["mc_rate"] = true;
    if (flags.dump_trials) opts["dump_trials"] = true;
    return opts;
}

int status_to_exit(mtcap_status status) {
    switch (status) {
    case MTCAP_OK: return 0;
    case MTCAP_ERR_CONFIG: return 2;
    case MTCAP_ERR_NUMERIC: return 3;
    case MTCAP_ERR_BRACKET: return 4;
    case MTCAP_ERR_IO: return 2;
    default: return 2;
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int run(const std::string& command, const CommonFlags& flags) {
    const auto start = std::chrono::steady_clock::now();

    mtcap_config* config = nullptr;
    mtcap_status status = mtcap_config_load(flags.config_path.c_str(), &config);
    if (status != MTCAP_OK) {
        json err = {{"error", mtcap_last_error()}, {"stage", "config"}};
        std::cerr << err.dump(2) << "\n";
        return status_to_exit(status);
    }

    const json opts = options_json(flags);
    mtcap_result* result = nullptr;
    status = mtcap_run(config, command.c_str(), opts.dump().c_str(), &result);
    if (status != MTCAP_OK) {
        json err = {{"error", mtcap_last_error()}, {"stage", "run"}, {"command", command}};
        std::cerr << err.dump(2) << "\n";
        mtcap_config_free(config);
        return status_to_exit(status);
    }

    try {
        const std::filesystem::path out_dir(flags.out_dir);
        std::filesystem::create_directories(out_dir);

        const std::string result_text = mtcap_result_json(result);
        const char* csv_text = mtcap_result_csv(result);
        write_file(out_dir / "result.json", result_text);
        if (csv_text) write_file(out_dir / "rows.csv", csv_text);

        const json result_doc = json::parse(result_text);
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();

        json manifest;
        manifest["tool"] = "mtcap";
        manifest["version"] = mtcap_version();
        manifest["command"] = command;
        manifest["config_path"] = flags.config_path;
        manifest["config"] = result_doc["config"];
        manifest["derived"] = result_doc["derived"];
        manifest["master_seed"] = flags.seed;
        manifest["options"] = opts;
        manifest["modes"] = {{"interference", flags.mode},
                             {"clip", flags.clip},
                             {"normalization", flags.normalization},
                             {"fading_scale", result_doc["config"]["fading_scale"]}};
        manifest["warnings"] = result_doc["warnings"];
        manifest["timing_ms"] = elapsed;
        json outputs = json::array();
        outputs.push_back(
            {{"path", "result.json"}, {"sha256", mtcap_cli::Sha256::of(result_text)}});
        if (csv_text) {
            const std::string csv(csv_text);
            const std::string header = csv.substr(0, csv.find('\n'));
            outputs.push_back({{"path", "rows.csv"},
                               {"sha256", mtcap_cli::Sha256::of(csv)},
                               {"columns", header}});
        }
        manifest["outputs"] = outputs;
        write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");

        if (command == "validate") {
            std::cout << result_doc["result"].dump(2) << "\n";
            if (!result_doc["result"]["ok"].get<bool>()) {
                mtcap_result_free(result);
                mtcap_config_free(config);
                return 3;
            }
        } else {
            std::cout << "wrote " << (out_dir / "result.json").string() << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << json({{"error", e.what()}, {"stage", "output"}}).dump(2) << "\n";
        mtcap_result_free(result);
        mtcap_config_free(config);
        return 2;
    }

    mtcap_result_free(result);
    mtcap_config_free(config);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mtcap: multicast transmission capacity analytics and simulation"};
    app.require_subcommand(1);

    struct Command {
        std::string name;
        std::string description;
        CommonFlags flags;
        CLI::App* cmd = nullptr;
    };
    std::vector<Command> commands = {
        {"validate", "Check config invariants and run the fast self-consistency suite", {}, nullptr},
        {"laplace", "Interference Laplace transform: closed form, PGFL route, optional MC", {}, nullptr},
        {"success-prob", "Per-attempt connection probability over receiver distances", {}, nullptr},
        {"outage", "Multicast outage probability (analytic and/or Monte-Carlo)", {}, nullptr},
        {"lambda-max", "Maximum contention intensity (closed form or bisection)", {}, nullptr},
        {"rate", "Monte-Carlo multicast rate with bound diagnostics", {}, nullptr},
        {"mtc", "Multicast transmission capacity C_eps", {}, nullptr},
        {"sweep", "Regime sweep over k with scaling fit", {}, nullptr},
        {"retx-study", "Capacity as a function of the attempt budget tau", {}, nullptr},
    };

    for (auto& command : commands) {
        command.cmd = app.add_subcommand(command.name, command.description);
        add_common_flags(command.cmd, command.flags);
        CLI::App* cmd = command.cmd;
        CommonFlags& flags = command.flags;
        if (command.name == "laplace") {
            cmd->add_option("--phi", flags.phi, "Transform arguments");
            cmd->add_option("--window", flags.window, "Field radius (omit for truncation rule)");
            cmd->add_option("--oracle", flags.oracle, "analytic | mc")
                ->check(CLI::IsMember({"analytic", "mc"}));
        } else if (command.name == "success-prob") {
            cmd->add_option("--r", flags.r_grid, "Receiver distances");
            cmd->add_option("--window", flags.window, "Field radius (omit for infinite)");
        } else if (command.name == "outage") {
            cmd->add_option("--oracle", flags.oracle, "analytic | mc")
                ->check(CLI::IsMember({"analytic", "mc"}));
            cmd->add_option("--r-sim", flags.r_sim, "Explicit simulation window radius");
            cmd->add_flag("--dump-trials", flags.dump_trials,
                          "Write one CSV row per trial instead of rows.csv");
        } else if (command.name == "lambda-max") {
            cmd->add_option("--oracle", flags.oracle, "closed | analytic | mc")
                ->check(CLI::IsMember({"closed", "analytic", "mc"}));
            cmd->add_option("--a-hat-b", flags.a_hat_b, "Inner cutoff radius (<= 1)");
            cmd->add_option("--tolerance", flags.tolerance, "Solver outage tolerance");
        } else if (command.name == "rate") {
            cmd->add_option("--lambda-t-grid", flags.lambda_t_grid,
                            "Sweep lambda_t instead of the config value");
            cmd->add_option("--r-sim", flags.r_sim, "Explicit simulation window radius");
        } else if (command.name == "mtc") {
            cmd->add_option("--oracle", flags.oracle, "closed | analytic | mc")
                ->check(CLI::IsMember({"closed", "analytic", "mc"}));
            cmd->add_option("--b-method", flags.b_method, "proxy | mc")
                ->check(CLI::IsMember({"proxy", "mc"}));
        } else if (command.name == "sweep") {
            cmd->add_option("--regime", flags.regime, "dense | large | large-dense")
                ->check(CLI::IsMember({"dense", "large", "large-dense"}));
            cmd->add_option("--k-grid", flags.k_grid, "Mean receiver counts")->required();
            cmd->add_option("--c", flags.large_dense_c, "large-dense proportionality");
            cmd->add_flag("--solve", flags.solve, "Also bisect lambda_bar per row");
            cmd->add_flag("--mc-rate", flags.mc_rate, "Estimate b by Monte-Carlo per row");
        } else if (command.name == "retx-study") {
            cmd->add_option("--tau-grid", flags.tau_grid, "Attempt budgets (default 1..8)");
            cmd->add_option("--k", flags.k_override, "Mean receiver count (default from config)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (auto& command : commands) {
        if (command.cmd->parsed()) return run(command.name, command.flags);
    }
    return 2;
}
