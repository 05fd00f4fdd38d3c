// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-level workflows shared by the C API and the CLI.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perilap/analyticity.hpp"
#include "perilap/config.hpp"

namespace perilap {

// Header x,y,u,u_x,u_y. Points inside a hole keep x,y and leave the value
// fields empty.
std::string grid_csv(const Solution& sol, const GridSpec& grid);

struct SweepResult {
  FamilyKind kind = FamilyKind::kFixed;
  FamilyCertificate certificate;
  std::vector<DecayReport> reports;
  std::vector<DerivativeCheck> fd_checks;
  bool all_passed = false;
  std::string json;
  std::string csv;
};

// Throws Error(kFamilyInvalid) naming the failing t.
SweepResult run_sweep(const RunConfig& cfg);

}  // namespace perilap
