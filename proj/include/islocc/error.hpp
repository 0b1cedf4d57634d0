// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace islocc {

enum class ErrorCode {
  invalid_argument,
  basis_mismatch,
  missing_mode,
  norm_violation,
  size_mismatch,
  statistics_mismatch,
  above_cap,
  zero_trace,
  zero_probability,
  not_positive,
  not_x_shaped,
  undefined_entropy,
  config,
  io,
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::basis_mismatch: return "basis_mismatch";
    case ErrorCode::missing_mode: return "missing_mode";
    case ErrorCode::norm_violation: return "norm_violation";
    case ErrorCode::size_mismatch: return "size_mismatch";
    case ErrorCode::statistics_mismatch: return "statistics_mismatch";
    case ErrorCode::above_cap: return "above_cap";
    case ErrorCode::zero_trace: return "zero_trace";
    case ErrorCode::zero_probability: return "zero_probability";
    case ErrorCode::not_positive: return "not_positive";
    case ErrorCode::not_x_shaped: return "not_x_shaped";
    case ErrorCode::undefined_entropy: return "undefined_entropy";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace islocc
