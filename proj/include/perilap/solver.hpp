// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "perilap/geometry.hpp"
#include "perilap/potentials.hpp"

namespace perilap {

inline constexpr int kDefaultNodeCount = 128;

// The exterior periodic Neumann problem
//   Laplacian u = 0 outside the lattice of holes q phi(Omega) + q Z^2,
//   u q-periodic,
//   du/dnu = g o phi^{-1} o q^{-1}, minus its boundary mean,
//   boundary integral of u = k.
// The datum g is given by its values at the reference nodes t_j.
struct NeumannProblem {
  PeriodicCell cell;
  DiffeoMap diffeo;
  std::vector<double> datum;
  double k = 0.0;
  int node_count = kDefaultNodeCount;
  BoundaryOptions boundary_options{};
};

// g(t_j) for t_j = 2 pi j / n.
std::vector<double> sample_datum(const std::function<double(double)>& g, int n);

// g_j - (sum_m g_m w_m) / (sum_m w_m), flagged zero-mean.
Density build_rhs(const NeumannProblem& problem, const BoundaryMap& bmap);

struct SolveDiagnostics {
  double residual = 0.0;        // ||A theta - rhs|| / max(||rhs||, tiny)
  double condition_estimate = 0.0;  // reciprocal of LU rcond
  bool refined = false;         // one step of iterative refinement was taken
};

struct DensitySolution {
  Density theta;
  SolveDiagnostics diagnostics;
};

// Solves (1/2) theta + W* theta = rhs on the reference nodes.
DensitySolution solve_density(const NeumannProblem& problem, const BoundaryMap& bmap);

struct FieldValue {
  double value = 0.0;
  bool near_boundary = false;
};

struct FieldGradient {
  Vec2 grad;
  bool near_boundary = false;
};

// u = v[mu] + c, with mu the pullback of theta and c fixed by the boundary
// integral condition.
class Solution {
 public:
  Solution(BoundaryMap bmap, Density theta, Eigen::VectorXd boundary_trace, double constant,
           SolveDiagnostics diagnostics);

  const BoundaryMap& boundary() const noexcept { return bmap_; }
  const Density& theta() const noexcept { return theta_; }
  // mu on the physical boundary; same node values as theta.
  Density mu() const;
  double constant() const noexcept { return constant_; }
  const SolveDiagnostics& diagnostics() const noexcept { return diagnostics_; }
  double perimeter() const noexcept { return bmap_.perimeter(); }

  // Node values of u on the hole boundary.
  Eigen::VectorXd boundary_values() const;
  // sum_j u(x_j) w_j
  double boundary_integral() const;

  // Throws a domain error for x inside a hole.
  FieldValue eval(const Vec2& x) const;
  FieldGradient eval_grad(const Vec2& x) const;

  // {"nodes", "theta", "constant", "residual", "perimeter", ...}
  std::string to_json() const;

 private:
  BoundaryMap bmap_;
  Density theta_;
  Eigen::VectorXd trace_;
  double constant_;
  SolveDiagnostics diagnostics_;
};

Solution solve(const NeumannProblem& problem);

}  // namespace perilap
