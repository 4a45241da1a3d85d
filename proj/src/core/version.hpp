// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace mtcap {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kResultSchemaVersion = 1;

} // namespace mtcap
