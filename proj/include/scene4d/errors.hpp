// Copyright 2026 The scene4d Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace scene4d {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or invariant (CLI exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or decoding failure (CLI exit code 3).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace scene4d
