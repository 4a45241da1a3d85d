// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "mtcap/mtcap.h"

#include <cmath>
#include <cstring>
#include <string>

#include "core/error.hpp"
#include "core/model.hpp"
#include "core/outage.hpp"
#include "core/pointprocess.hpp"
#include "core/runner.hpp"
#include "core/shotnoise.hpp"
#include "core/version.hpp"

struct mtcap_config {
    mtcap::NetworkConfig config;
};

struct mtcap_result {
    std::string json;
    std::string csv;
};

namespace {

thread_local std::string g_last_error;

mtcap_status set_error(mtcap_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
mtcap_status guarded(Fn&& fn) {
    try {
        fn();
        return MTCAP_OK;
    } catch (const mtcap::Error& e) {
        return set_error(static_cast<mtcap_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::exception& e) {
        return set_error(MTCAP_ERR_NUMERIC, e.what());
    }
}

mtcap_status require(bool condition, const char* message) {
    return condition ? MTCAP_OK : set_error(MTCAP_ERR_ARG, message);
}

double window_arg(double window) {
    return window > 0.0 ? window : mtcap::kInfiniteWindow;
}

mtcap::ShotNoiseQuery make_query(const mtcap::NetworkConfig& config, double phi,
                                 double window) {
    mtcap::ShotNoiseQuery q;
    q.phi = phi * config.gain_mean();
    q.window = window_arg(window);
    q.lambda = config.lambda_t;
    q.m = config.m;
    q.alpha = config.alpha;
    q.d = config.d;
    return q;
}

} // namespace

extern "C" {

const char* mtcap_version(void) { return mtcap::kVersion; }

const char* mtcap_last_error(void) { return g_last_error.c_str(); }

void mtcap_string_free(char* text) { delete[] text; }

mtcap_status mtcap_config_parse(const char* json_text, mtcap_config** out) {
    if (auto st = require(json_text && out, "null argument to mtcap_config_parse")) return st;
    return guarded([&] {
        auto* handle = new mtcap_config{mtcap::NetworkConfig::from_json(json_text)};
        *out = handle;
    });
}

mtcap_status mtcap_config_load(const char* path, mtcap_config** out) {
    if (auto st = require(path && out, "null argument to mtcap_config_load")) return st;
    return guarded([&] {
        auto* handle = new mtcap_config{mtcap::NetworkConfig::load_file(path)};
        *out = handle;
    });
}

mtcap_status mtcap_config_to_json(const mtcap_config* config, char** out_text) {
    if (auto st = require(config && out_text, "null argument to mtcap_config_to_json"))
        return st;
    return guarded([&] {
        const std::string text = config->config.to_json();
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out_text = buffer;
    });
}

void mtcap_config_free(mtcap_config* config) { delete config; }

mtcap_status mtcap_config_validate(const mtcap_config* config) {
    if (auto st = require(config != nullptr, "null config handle")) return st;
    return guarded([&] { config->config.validate(); });
}

mtcap_status mtcap_derive_params(const mtcap_config* config, double* xi, double* mu_u,
                                 double* mu_r, double* k) {
    if (auto st = require(config != nullptr, "null config handle")) return st;
    return guarded([&] {
        const mtcap::DerivedParams derived = mtcap::derive_params(config->config);
        if (xi) *xi = derived.xi;
        if (mu_u) *mu_u = derived.mu_u;
        if (mu_r) *mu_r = derived.mu_r;
        if (k) *k = derived.k;
    });
}

mtcap_status mtcap_path_loss(double distance, double alpha, double* out) {
    if (auto st = require(out != nullptr, "null output pointer")) return st;
    if (auto st = require(distance >= 0.0 && alpha > 0.0,
                          "path loss requires distance >= 0 and alpha > 0"))
        return st;
    *out = mtcap::path_loss(distance, alpha);
    return MTCAP_OK;
}

mtcap_status mtcap_fading_cdf(const mtcap_config* config, double x, double* out) {
    if (auto st = require(config && out, "null argument to mtcap_fading_cdf")) return st;
    if (auto st = require(x >= 0.0, "fading_cdf requires x >= 0")) return st;
    return guarded([&] {
        *out = mtcap::fading_cdf(x, config->config.m, config->config.gain_mean());
    });
}

mtcap_status mtcap_delta1(const mtcap_config* config, double phi, double window, double* out) {
    if (auto st = require(config && out, "null argument to mtcap_delta1")) return st;
    return guarded([&] { *out = mtcap::delta1(make_query(config->config, phi, window)); });
}

mtcap_status mtcap_delta2(const mtcap_config* config, double phi, double window, double* out) {
    if (auto st = require(config && out, "null argument to mtcap_delta2")) return st;
    return guarded([&] { *out = mtcap::delta2(make_query(config->config, phi, window)); });
}

mtcap_status mtcap_laplace(const mtcap_config* config, double phi, double window, double* out) {
    if (auto st = require(config && out, "null argument to mtcap_laplace")) return st;
    return guarded(
        [&] { *out = mtcap::laplace_functional(make_query(config->config, phi, window)); });
}

mtcap_status mtcap_mgf(const mtcap_config* config, double phi, double window, double* out) {
    if (auto st = require(config && out, "null argument to mtcap_mgf")) return st;
    return guarded([&] { *out = mtcap::mgf(make_query(config->config, phi, window)); });
}

mtcap_status mtcap_success_probability(const mtcap_config* config, double r, double* out) {
    if (auto st = require(config && out, "null argument to mtcap_success_probability"))
        return st;
    return guarded([&] { *out = mtcap::per_attempt_success(r, config->config); });
}

mtcap_status mtcap_connected_intensity_bound(const mtcap_config* config, double r,
                                             double* out) {
    if (auto st = require(config && out, "null argument")) return st;
    return guarded([&] {
        *out = mtcap::connected_intensity_bound(r, config->config.tau, config->config);
    });
}

mtcap_status mtcap_outage_analytic(const mtcap_config* config, double* out) {
    if (auto st = require(config && out, "null argument to mtcap_outage_analytic")) return st;
    return guarded([&] { *out = mtcap::outage_probability_analytic(config->config); });
}

mtcap_status mtcap_truncation_radius(const mtcap_config* config, double bias_tol,
                                     double* out) {
    if (auto st = require(config && out, "null argument to mtcap_truncation_radius"))
        return st;
    return guarded([&] {
        *out = mtcap::truncation_radius(config->config.lambda_t, config->config.alpha,
                                        config->config.d, bias_tol);
    });
}

mtcap_status mtcap_run(const mtcap_config* config, const char* command,
                       const char* options_json, mtcap_result** out) {
    if (auto st = require(config && command && out, "null argument to mtcap_run")) return st;
    return guarded([&] {
        const mtcap::RunOutput output = mtcap::run_command(
            config->config, command, options_json ? options_json : "");
        auto* handle = new mtcap_result;
        handle->json = output.result.dump(2);
        handle->csv = output.csv;
        *out = handle;
    });
}

const char* mtcap_result_json(const mtcap_result* result) {
    return result ? result->json.c_str() : nullptr;
}

const char* mtcap_result_csv(const mtcap_result* result) {
    if (!result || result->csv.empty()) return nullptr;
    return result->csv.c_str();
}

void mtcap_result_free(mtcap_result* result) { delete result; }

} // extern "C"
