// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Invariant suites run by the verify command. Failures are reported, not thrown.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perilap/config.hpp"

namespace perilap {

struct VerifyCheck {
  std::string suite;
  std::string geometry;  // "-" for cell-only checks
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;  // set when the check could not run
};

struct VerifyReport {
  double q11 = 1.0;
  double q22 = 1.0;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;

  bool all_passed() const noexcept;
  std::string table() const;
  std::string to_json() const;
};

// Built-in geometries, centered in the cell: a circle of radius 0.25 m and an
// ellipse with semi-axes (0.2 m, 0.1 m), where m is the shorter cell edge.
VerifyReport run_verify(const PeriodicCell& cell, const VerifySpec& spec, std::uint64_t seed);

}  // namespace perilap
