// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "perilap/geometry.hpp"

namespace perilap {

// theta lives on the reference boundary, mu on the physical hole boundary.
// Both are sampled at the same parameter nodes t_j, so the pullback
// mu(q phi(gamma(t_j))) = theta(gamma(t_j)) is the identity on node values.
enum class DensityDomain { kReference, kPhysical };

struct Density {
  Eigen::VectorXd values;
  DensityDomain domain = DensityDomain::kPhysical;
  // Set when sum_j values_j w_j is known to vanish.
  bool zero_mean = false;

  int size() const noexcept { return static_cast<int>(values.size()); }
};

// sum_j values_j w_j
double weighted_sum(const Density& mu, const BoundaryMap& bmap);

// Trigonometric interpolation of node values onto n equispaced nodes.
Density resample(const Density& mu, int n);

// Nystrom matrix of the adjoint double layer,
//   K_jm = nu_j . grad S(x_j - x_m) w_m   (j != m),
//   K_jj = kappa_j w_j / (4 pi),
// the diagonal being the continuous limit of the kernel on a smooth curve.
class WstarMatrix {
 public:
  explicit WstarMatrix(Eigen::MatrixXd k) : k_(std::move(k)) {}

  const Eigen::MatrixXd& matrix() const noexcept { return k_; }
  int size() const noexcept { return static_cast<int>(k_.rows()); }
  // (1/2) I + K
  Eigen::MatrixXd half_plus() const;

 private:
  Eigen::MatrixXd k_;
};

WstarMatrix assemble_wstar(const BoundaryMap& bmap);

// (1/2) mu + W* mu. Preserves the zero-mean flag.
Density apply_half_plus_wstar(const WstarMatrix& wstar, const Density& mu);

// Matrix mapping node densities to node values of the single layer potential
// on the boundary. The logarithmic part of the kernel is integrated with
// Kress product weights, the smooth remainder with the trapezoid rule.
Eigen::MatrixXd assemble_single_layer(const BoundaryMap& bmap);

Eigen::VectorXd single_layer_onboundary(const BoundaryMap& bmap, const Density& mu);

struct LayerValue {
  double value = 0.0;
  bool near_boundary = false;
};

struct LayerGradient {
  Vec2 grad;
  bool near_boundary = false;
};

// Targets closer than this to the boundary get the near_boundary flag; below
// it the trapezoid rule loses accuracy.
double near_boundary_distance(const BoundaryMap& bmap);

LayerValue single_layer_offboundary(const BoundaryMap& bmap, const Density& mu, const Vec2& x);
LayerGradient gradient_offboundary(const BoundaryMap& bmap, const Density& mu, const Vec2& x);

}  // namespace perilap
