// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/model.hpp"

namespace mtcap {

// One computation request against a parsed config.  `command` is one of:
// validate, laplace, success-prob, outage, lambda-max, rate, mtc, sweep,
// retx-study.  `options_json` holds the run flags (seed, trials, mode, clip,
// normalization, oracle, ...); unknown keys are rejected.
struct RunOutput {
    nlohmann::json result;          // full result document
    std::string csv;                // tabular payload, empty when none
    std::vector<std::string> warnings;
};

RunOutput run_command(const NetworkConfig& config, const std::string& command,
                      const std::string& options_json);

const std::vector<std::string>& run_commands();

} // namespace mtcap
