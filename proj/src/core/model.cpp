// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#include "core/model.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/mathutil.hpp"

namespace mtcap {

std::string to_string(FadingScale scale) {
    return scale == FadingScale::unit_mean ? "unit-mean" : "scale-one";
}

FadingScale fading_scale_from_string(const std::string& name) {
    if (name == "unit-mean") return FadingScale::unit_mean;
    if (name == "scale-one") return FadingScale::scale_one;
    throw_config("fading_scale must be \"unit-mean\" or \"scale-one\", got \"" + name + "\"");
}

std::string to_string(ClipPolicy clip) {
    return clip == ClipPolicy::capped ? "capped" : "strict-eq1";
}

ClipPolicy clip_policy_from_string(const std::string& name) {
    if (name == "capped") return ClipPolicy::capped;
    if (name == "strict-eq1") return ClipPolicy::strict_eq1;
    throw_config("clip policy must be \"capped\" or \"strict-eq1\", got \"" + name + "\"");
}

void NetworkConfig::validate() const {
    if (d < 1 || d > 3) throw_config("d must be an integer in 1..3");
    if (!(alpha > d)) throw_config("alpha > d is required for finite shot noise");
    if (!(beta > 0.0)) throw_config("beta must be positive");
    if (!(s >= 1.0)) throw_config("s >= 1 is required");
    if (!(lambda_t >= 0.0)) throw_config("lambda_t >= 0 is required");
    if (!(lambda_r > 0.0)) throw_config("lambda_r > 0 is required");
    if (m < 1) throw_config("m must be an integer >= 1");
    if (tau < 1) throw_config("tau must be an integer >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw_config("epsilon must lie in (0,1)");
}

DerivedParams derive_params(const NetworkConfig& config) {
    config.validate();
    DerivedParams out;
    out.xi = double(config.d) / config.alpha;
    out.mu_u = unit_ball_volume(config.d);
    out.mu_r = out.mu_u * std::pow(config.s, config.d);
    out.k = out.mu_r * config.lambda_r;
    return out;
}

double fading_cdf(double x, int m, double gain_mean) {
    if (x <= 0.0) return 0.0;
    return 1.0 - regularized_gamma_q(m, double(m) * x / gain_mean);
}

namespace {

const std::set<std::string> kConfigFields = {
    "d", "alpha", "beta", "s", "lambda_t", "lambda_r", "m", "tau", "epsilon",
    "fading_scale"};

double require_number(const nlohmann::json& doc, const std::string& key) {
    if (!doc.contains(key)) throw_config("config is missing field \"" + key + "\"");
    if (!doc[key].is_number()) throw_config("config field \"" + key + "\" must be a number");
    return doc[key].get<double>();
}

int require_int(const nlohmann::json& doc, const std::string& key) {
    if (!doc.contains(key)) throw_config("config is missing field \"" + key + "\"");
    if (!doc[key].is_number_integer())
        throw_config("config field \"" + key + "\" must be an integer");
    return doc[key].get<int>();
}

} // namespace

std::string NetworkConfig::to_json() const {
    nlohmann::json doc;
    doc["d"] = d;
    doc["alpha"] = alpha;
    doc["beta"] = beta;
    doc["s"] = s;
    doc["lambda_t"] = lambda_t;
    doc["lambda_r"] = lambda_r;
    doc["m"] = m;
    doc["tau"] = tau;
    doc["epsilon"] = epsilon;
    doc["fading_scale"] = to_string(fading_scale);
    return doc.dump(2);
}

NetworkConfig NetworkConfig::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw_config(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw_config("config must be a JSON object");
    for (const auto& item : doc.items()) {
        if (!kConfigFields.count(item.key()))
            throw_config("config has unknown field \"" + item.key() + "\"");
    }
    NetworkConfig config;
    config.d = require_int(doc, "d");
    config.alpha = require_number(doc, "alpha");
    config.beta = require_number(doc, "beta");
    config.s = require_number(doc, "s");
    config.lambda_t = require_number(doc, "lambda_t");
    config.lambda_r = require_number(doc, "lambda_r");
    config.m = require_int(doc, "m");
    config.tau = require_int(doc, "tau");
    config.epsilon = require_number(doc, "epsilon");
    if (doc.contains("fading_scale")) {
        if (!doc["fading_scale"].is_string())
            throw_config("config field \"fading_scale\" must be a string");
        config.fading_scale = fading_scale_from_string(doc["fading_scale"].get<std::string>());
    }
    config.validate();
    return config;
}

NetworkConfig NetworkConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_io("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

} // namespace mtcap
