// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared-library surface exactly as an external consumer
// would: opaque handles, status codes, JSON documents.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "mtcap/mtcap.h"

namespace {

const char* kSampleConfig = R"({
  "d": 2, "alpha": 4.0, "beta": 1.0, "s": 10.0,
  "lambda_t": 0.01, "lambda_r": 0.1, "m": 1, "tau": 1, "epsilon": 0.05
})";

struct ConfigHandle {
    mtcap_config* ptr = nullptr;
    ~ConfigHandle() { mtcap_config_free(ptr); }
};

} // namespace

TEST_CASE("version string is exposed") {
    CHECK(std::strlen(mtcap_version()) >= 5);
}

TEST_CASE("config parse, validate, serialize") {
    ConfigHandle config;
    REQUIRE(mtcap_config_parse(kSampleConfig, &config.ptr) == MTCAP_OK);
    CHECK(mtcap_config_validate(config.ptr) == MTCAP_OK);

    char* text = nullptr;
    REQUIRE(mtcap_config_to_json(config.ptr, &text) == MTCAP_OK);
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["s"] == 10.0);
    CHECK(doc["fading_scale"] == "unit-mean");
    mtcap_string_free(text);
}

TEST_CASE("config errors carry the violated constraint and code 2") {
    mtcap_config* config = nullptr;
    const char* bad = R"({"d":2,"alpha":1.5,"beta":1,"s":10,"lambda_t":0.01,
                          "lambda_r":0.1,"m":1,"tau":1,"epsilon":0.05})";
    CHECK(mtcap_config_parse(bad, &config) == MTCAP_ERR_CONFIG);
    CHECK(std::string(mtcap_last_error()).find("alpha > d") != std::string::npos);

    const char* small_s = R"({"d":2,"alpha":4,"beta":1,"s":0.5,"lambda_t":0.01,
                              "lambda_r":0.1,"m":1,"tau":1,"epsilon":0.05})";
    CHECK(mtcap_config_parse(small_s, &config) == MTCAP_ERR_CONFIG);
    CHECK(std::string(mtcap_last_error()).find("s >= 1") != std::string::npos);

    CHECK(mtcap_config_parse(nullptr, &config) == MTCAP_ERR_ARG);
    CHECK(mtcap_config_load("/nonexistent/path.json", &config) == MTCAP_ERR_IO);
}

TEST_CASE("derived parameters") {
    ConfigHandle config;
    REQUIRE(mtcap_config_parse(kSampleConfig, &config.ptr) == MTCAP_OK);
    double xi = 0, mu_u = 0, mu_r = 0, k = 0;
    REQUIRE(mtcap_derive_params(config.ptr, &xi, &mu_u, &mu_r, &k) == MTCAP_OK);
    CHECK(xi == doctest::Approx(0.5));
    CHECK(mu_u == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(mu_r == doctest::Approx(100.0 * M_PI).epsilon(1e-12));
    CHECK(k == doctest::Approx(10.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("numeric surface") {
    ConfigHandle config;
    REQUIRE(mtcap_config_parse(kSampleConfig, &config.ptr) == MTCAP_OK);

    double value = 0.0;
    CHECK(mtcap_path_loss(0.5, 4.0, &value) == MTCAP_OK);
    CHECK(value == 0.0);
    CHECK(mtcap_path_loss(2.0, 4.0, &value) == MTCAP_OK);
    CHECK(value == doctest::Approx(0.0625));

    CHECK(mtcap_fading_cdf(config.ptr, 1.0, &value) == MTCAP_OK);
    CHECK(value == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

    CHECK(mtcap_delta1(config.ptr, 16.0, 0.0, &value) == MTCAP_OK);
    CHECK(value == doctest::Approx(5.3032706).epsilon(1e-6));
    CHECK(mtcap_laplace(config.ptr, 16.0, 0.0, &value) == MTCAP_OK);
    CHECK(value == doctest::Approx(0.8465321).epsilon(1e-6));

    // delta2 domain violation maps to the numeric status.
    CHECK(mtcap_delta2(config.ptr, 2.0, 2.0, &value) == MTCAP_ERR_NUMERIC);
    CHECK(std::string(mtcap_last_error()).find("phi < m") != std::string::npos);
    CHECK(mtcap_delta2(config.ptr, 0.5, 2.0, &value) == MTCAP_OK);
    CHECK(value == doctest::Approx(0.4968982).epsilon(1e-6));
    CHECK(mtcap_mgf(config.ptr, 0.5, 2.0, &value) == MTCAP_OK);
    CHECK(value >= 1.0);

    CHECK(mtcap_success_probability(config.ptr, 2.0, &value) == MTCAP_OK);
    CHECK(value == doctest::Approx(0.8465321).epsilon(1e-6));
    CHECK(mtcap_connected_intensity_bound(config.ptr, 2.0, &value) == MTCAP_OK);
    CHECK(value == doctest::Approx(0.08465321).epsilon(1e-6));

    CHECK(mtcap_outage_analytic(config.ptr, &value) == MTCAP_OK);
    CHECK(value > 0.0);
    CHECK(value < 1.0);

    CHECK(mtcap_truncation_radius(config.ptr, 1e-4, &value) == MTCAP_OK);
    CHECK(value == doctest::Approx(17.7245).epsilon(1e-4));

    CHECK(mtcap_path_loss(-1.0, 4.0, &value) == MTCAP_ERR_ARG);
    CHECK(mtcap_delta1(nullptr, 1.0, 0.0, &value) == MTCAP_ERR_ARG);
}

TEST_CASE("runner: lambda-max closed form through the C API") {
    const char* k10 = R"({"d":2,"alpha":4,"beta":1,"s":10,"lambda_t":0.01,
                          "lambda_r":0.03183098861837907,"m":1,"tau":1,"epsilon":0.05})";
    ConfigHandle config;
    REQUIRE(mtcap_config_parse(k10, &config.ptr) == MTCAP_OK);

    mtcap_result* result = nullptr;
    REQUIRE(mtcap_run(config.ptr, "lambda-max", R"({"oracle":"closed"})", &result) == MTCAP_OK);
    const auto doc = nlohmann::json::parse(mtcap_result_json(result));
    CHECK(doc["command"] == "lambda-max");
    CHECK(doc["result"]["solution"]["lambda_bar"].get<double>() ==
          doctest::Approx(2.0264e-5).epsilon(1e-4));
    CHECK(doc["result"]["solution"]["d_hat"].get<double>() ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-9));
    CHECK(mtcap_result_csv(result) == nullptr);
    mtcap_result_free(result);
}

TEST_CASE("runner: outage with Monte-Carlo oracle and csv-bearing commands") {
    ConfigHandle config;
    REQUIRE(mtcap_config_parse(kSampleConfig, &config.ptr) == MTCAP_OK);

    mtcap_result* result = nullptr;
    REQUIRE(mtcap_run(config.ptr, "outage",
                      R"({"oracle":"mc","trials":2000,"seed":5,"threads":2})",
                      &result) == MTCAP_OK);
    auto doc = nlohmann::json::parse(mtcap_result_json(result));
    CHECK(doc["result"]["analytic"].is_number());
    CHECK(doc["result"]["mc"]["trials"] == 2000);
    mtcap_result_free(result);

    REQUIRE(mtcap_run(config.ptr, "success-prob", "", &result) == MTCAP_OK);
    REQUIRE(mtcap_result_csv(result) != nullptr);
    CHECK(std::string(mtcap_result_csv(result)).rfind("r,p,lambda_c_bound\n", 0) == 0);
    mtcap_result_free(result);

    REQUIRE(mtcap_run(config.ptr, "sweep",
                      R"({"regime":"dense","k_grid":[100,316,1000,3162,10000]})",
                      &result) == MTCAP_OK);
    doc = nlohmann::json::parse(mtcap_result_json(result));
    CHECK(doc["result"]["fit"]["exponent"].get<double>() == doctest::Approx(-1.0).epsilon(0.1));
    mtcap_result_free(result);

    CHECK(mtcap_run(config.ptr, "no-such-command", "", &result) == MTCAP_ERR_ARG);
    CHECK(mtcap_run(config.ptr, "sweep", R"({"bogus_option":1})", &result) ==
          MTCAP_ERR_CONFIG);
}

TEST_CASE("runner: validate command reports checks") {
    ConfigHandle config;
    REQUIRE(mtcap_config_parse(kSampleConfig, &config.ptr) == MTCAP_OK);
    mtcap_result* result = nullptr;
    REQUIRE(mtcap_run(config.ptr, "validate", R"({"trials":4000,"seed":3})", &result) ==
            MTCAP_OK);
    const auto doc = nlohmann::json::parse(mtcap_result_json(result));
    CHECK(doc["result"]["ok"] == true);
    CHECK(doc["result"]["checks"].size() >= 4);
    mtcap_result_free(result);
}
