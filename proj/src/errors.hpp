// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rankmin {

// Thrown when a configurable work cap (enumeration size, rejection
// attempts, noise-weight budget) is exceeded. Distinct from argument
// validation so callers can map it to a different exit code.
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rankmin
