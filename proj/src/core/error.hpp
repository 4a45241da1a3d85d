// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mtcap {

// Error categories; values line up with the C API status codes and the
// CLI exit codes.
enum class ErrorCode : int {
    ok = 0,
    config = 2,   // invalid configuration or malformed input document
    numeric = 3,  // quadrature failure, domain violation, non-finite result
    bracket = 4,  // root bracketing failure in a solver
    argument = 5, // bad argument to an API call
    io = 6,       // file system problem
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void throw_config(const std::string& msg) {
    throw Error(ErrorCode::config, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
    throw Error(ErrorCode::numeric, msg);
}
[[noreturn]] inline void throw_bracket(const std::string& msg) {
    throw Error(ErrorCode::bracket, msg);
}
[[noreturn]] inline void throw_argument(const std::string& msg) {
    throw Error(ErrorCode::argument, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
    throw Error(ErrorCode::io, msg);
}

} // namespace mtcap
