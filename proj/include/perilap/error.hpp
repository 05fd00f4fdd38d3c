// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace perilap {

enum class ErrorCode {
  kInvalidArgument = 1,
  kInvalidCell,
  kZeroFrequency,
  kSingularity,
  kInvalidGeometry,
  kDimensionMismatch,
  kSingularTarget,
  kSingularOperator,
  kDomain,
  kFamilyInvalid,
  kInsufficientData,
  kConfig,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace perilap
