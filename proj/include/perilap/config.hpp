// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: a JSON document validated against a fixed schema.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perilap/analyticity.hpp"
#include "perilap/solver.hpp"

namespace perilap {

// One additive term of a boundary datum; the datum is the sum of its terms.
struct DatumTerm {
  enum class Kind { kConstant, kCos, kSin, kNodes };
  Kind kind = Kind::kConstant;
  double amplitude = 1.0;  // constant value for kConstant
  int mode = 0;
  std::vector<double> values;  // kNodes, equispaced in t
};

struct DatumSpec {
  std::vector<DatumTerm> terms;

  bool empty() const noexcept { return terms.empty(); }
  std::vector<double> sample(int n) const;
};

struct GridSpec {
  double x_min = 0.0, x_max = 1.0;
  int nx = 0;
  double y_min = 0.0, y_max = 1.0;
  int ny = 0;

  bool enabled() const noexcept { return nx > 0 && ny > 0; }
};

struct FamilySpec {
  Vec2 dq;
  RadialProfile dshape;
  DatumSpec ddatum;
  double dk = 0.0;
  double t_min = -1.0;
  double t_max = 1.0;
};

struct SweepSpec {
  bool present = false;
  FamilySpec family;
  std::vector<Vec2> probes;
  int degree = 24;
  std::optional<double> fd_t0;  // derivative cross-check when set
};

struct VerifySpec {
  bool flip_normals = false;
  int random_points = 100;
  int node_count = kDefaultNodeCount;
};

struct OutputSpec {
  std::string solution = "solution.json";
  std::string grid = "grid.csv";
  std::string reports = "sweep.json";
  std::string coefficients = "coefficients.csv";
  std::string verify = "verify.json";
};

struct RunConfig {
  double q11 = 1.0;
  double q22 = 1.0;
  std::optional<double> ewald_xi;
  std::optional<DiffeoMap> diffeo;
  int node_count = kDefaultNodeCount;
  DatumSpec datum;
  double k = 0.0;
  GridSpec grid;
  SweepSpec sweep;
  VerifySpec verify;
  OutputSpec output;

  PeriodicCell cell() const;
  // Requires a geometry block.
  NeumannProblem problem() const;
  ParameterFamily family() const;
};

// Throws Error(kConfig) with a line/column position for syntax errors and a
// dotted field path for schema errors.
RunConfig parse_config(const std::string& text);

}  // namespace perilap
