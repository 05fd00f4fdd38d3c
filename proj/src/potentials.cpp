// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "perilap/error.hpp"
#include "perilap/parallel.hpp"

namespace perilap {

namespace {

constexpr double kPi = std::numbers::pi;

void check_size(const BoundaryMap& bmap, const Density& mu) {
  if (mu.size() != bmap.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "density size does not match the boundary node count");
  }
}

// Weights R_j of the product rule
//   int_0^{2pi} log(4 sin^2((t_i - s)/2)) f(s) ds ~ sum_j R_{|i-j|} f(t_j)
// for 2n equispaced nodes.
std::vector<double> kress_weights(int n_nodes) {
  const int n = n_nodes / 2;
  std::vector<double> r(static_cast<std::size_t>(n_nodes));
  for (int j = 0; j < n_nodes; ++j) {
    double sum = 0.0;
    for (int m = 1; m < n; ++m) sum += std::cos(m * j * kPi / n) / m;
    r[j] = -2.0 * kPi / n * sum - kPi / (static_cast<double>(n) * n) * ((j % 2 == 0) ? 1.0 : -1.0);
  }
  return r;
}

// Coincidence up to rounding of a lattice shift counts as a hit.
void check_target(double distance, const PeriodicCell& cell) {
  const double scale = std::max(cell.q11(), cell.q22());
  if (distance <= 64.0 * std::numeric_limits<double>::epsilon() * scale) throw Error(ErrorCode::kSingularTarget, "target coincides with a boundary node");
}

}  // namespace

double weighted_sum(const Density& mu, const BoundaryMap& bmap) {
  check_size(bmap, mu);
  double s = 0.0;
  for (int j = 0; j < mu.size(); ++j) s += mu.values[j] * bmap.weights()[j];
  return s;
}

Density resample(const Density& mu, int n) {
  std::vector<double> v(mu.values.data(), mu.values.data() + mu.values.size());
  const auto fine = TrigInterpolant(v).resample(n);
  Density out;
  out.values = Eigen::Map<const Eigen::VectorXd>(fine.data(), n);
  out.domain = mu.domain;
  return out;
}

Eigen::MatrixXd WstarMatrix::half_plus() const {
  Eigen::MatrixXd a = k_;
  a.diagonal().array() += 0.5;
  return a;
}

WstarMatrix assemble_wstar(const BoundaryMap& bmap) {
  const int n = bmap.size();
  const auto nodes = bmap.nodes();
  const auto normals = bmap.normals();
  const auto weights = bmap.weights();
  const auto kappa = bmap.curvature();
  const PeriodicCell& cell = bmap.cell();
  Eigen::MatrixXd k(n, n);
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int m = 0; m < n; ++m) {
      if (m == j) {
        k(j, m) = kappa[j] * weights[j] / (4.0 * kPi);
      } else {
        k(j, m) = dot(normals[j], cell.greens_grad(nodes[j] - nodes[m])) * weights[m];
      }
    }
  });
  return WstarMatrix(std::move(k));
}

Density apply_half_plus_wstar(const WstarMatrix& wstar, const Density& mu) {
  if (mu.size() != wstar.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "density size does not match the operator");
  }
  Density out;
  out.values = 0.5 * mu.values + wstar.matrix() * mu.values;
  out.domain = mu.domain;
  out.zero_mean = mu.zero_mean;
  return out;
}

Eigen::MatrixXd assemble_single_layer(const BoundaryMap& bmap) {
  const int n = bmap.size();
  const auto nodes = bmap.nodes();
  const auto speeds = bmap.speeds();
  const auto params = bmap.params();
  const PeriodicCell& cell = bmap.cell();
  const std::vector<double> r = kress_weights(n);
  const double h = 2.0 * kPi / n;
  const double regular_origin = cell.greens_regular({0.0, 0.0});
  Eigen::MatrixXd v(n, n);
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < n; ++j) {
      const int offset = i > j ? i - j : j - i;
      double smooth;
      if (i == j) {
        smooth = regular_origin + std::log(speeds[i]) / (2.0 * kPi);
      } else {
        const double half = 0.5 * (params[i] - params[j]);
        const double log_sin = std::log(4.0 * std::sin(half) * std::sin(half));
        smooth = cell.greens(nodes[i] - nodes[j]) - log_sin / (4.0 * kPi);
      }
      v(i, j) = (r[offset] / (4.0 * kPi) + h * smooth) * speeds[j];
    }
  });
  return v;
}

Eigen::VectorXd single_layer_onboundary(const BoundaryMap& bmap, const Density& mu) {
  check_size(bmap, mu);
  return assemble_single_layer(bmap) * mu.values;
}

double near_boundary_distance(const BoundaryMap& bmap) {
  return 2.0 * kPi * bmap.perimeter() / bmap.size();
}

LayerValue single_layer_offboundary(const BoundaryMap& bmap, const Density& mu, const Vec2& x) {
  check_size(bmap, mu);
  const double distance = bmap.node_distance(x);
  check_target(distance, bmap.cell());
  const auto nodes = bmap.nodes();
  const auto weights = bmap.weights();
  const PeriodicCell& cell = bmap.cell();
  double value = 0.0;
  for (int m = 0; m < bmap.size(); ++m) {
    if (mu.values[m] == 0.0) continue;
    value += cell.greens(x - nodes[m]) * mu.values[m] * weights[m];
  }
  return {value, distance < near_boundary_distance(bmap)};
}

LayerGradient gradient_offboundary(const BoundaryMap& bmap, const Density& mu, const Vec2& x) {
  check_size(bmap, mu);
  const double distance = bmap.node_distance(x);
  check_target(distance, bmap.cell());
  const auto nodes = bmap.nodes();
  const auto weights = bmap.weights();
  const PeriodicCell& cell = bmap.cell();
  Vec2 grad;
  for (int m = 0; m < bmap.size(); ++m) {
    if (mu.values[m] == 0.0) continue;
    grad += cell.greens_grad(x - nodes[m]) * (mu.values[m] * weights[m]);
  }
  return {grad, distance < near_boundary_distance(bmap)};
}

}  // namespace perilap
