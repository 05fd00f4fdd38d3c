// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "perilap/vec2.hpp"

namespace perilap {

// Rectangular periodicity cell Q = (0, q11) x (0, q22) together with the
// state needed to evaluate its periodic Green's function.
//
// The Green's function S satisfies  Laplacian S = sum_z delta_{qz} - 1/|Q|,
// is q-periodic and even, and has zero mean over the cell (its Fourier series
// has no constant mode). It is evaluated by Ewald splitting:
//
//   S(x) = -1/(4 pi) sum_z E1(xi^2 |x - qz|^2)
//          + 1/(4 xi^2 |Q|)
//          - 1/|Q| sum_{k != 0} exp(-|k|^2 / (4 xi^2)) cos(k.x) / |k|^2,
//
// with k = 2 pi q^{-1} z. Near the origin S behaves like log|x| / (2 pi).
class PeriodicCell {
 public:
  // Admissible aspect ratios q11/q22.
  static constexpr double kMaxAspect = 50.0;

  // Auto-selects the splitting parameter.
  PeriodicCell(double q11, double q22);
  // Explicit splitting parameter; truncation radii follow from it.
  PeriodicCell(double q11, double q22, double ewald_xi);

  double q11() const noexcept { return edges_.x; }
  double q22() const noexcept { return edges_.y; }
  Vec2 edges() const noexcept { return edges_; }
  double measure() const noexcept { return measure_; }
  double ewald_xi() const noexcept { return xi_; }
  std::array<int, 2> real_cutoff() const noexcept { return real_cut_; }
  std::array<int, 2> fourier_cutoff() const noexcept { return fourier_cut_; }

  // Nearest lattice image of x, i.e. x - q round(q^{-1} x).
  Vec2 reduce(const Vec2& x) const noexcept;
  // Distance from x to the lattice q Z^2.
  double lattice_distance(const Vec2& x) const noexcept { return norm(reduce(x)); }

  // Coefficient of exp(2 pi i (q^{-1} z).x) in the Fourier series of S.
  double fourier_coefficient(int z1, int z2) const;

  double greens(const Vec2& x) const;
  Vec2 greens_grad(const Vec2& x) const;

  // S(x) - log|x| / (2 pi). Smooth near the origin; the value at x = 0 is the
  // analytic limit. Only the lattice point at the origin is removed, so x must
  // not sit on any other lattice point.
  double greens_regular(const Vec2& x) const;

  // Five-point Laplacian of S at x with step h, plus 1/|Q|. Off the lattice
  // this is O(h^2).
  double poisson_residual(const Vec2& x, double h) const;

 private:
  void configure();
  double real_space_sum(const Vec2& xr, bool skip_origin) const;
  double fourier_sum(const Vec2& xr) const;

  Vec2 edges_;
  double measure_ = 0.0;
  double xi_ = 0.0;
  std::array<int, 2> real_cut_{};
  std::array<int, 2> fourier_cut_{};
};

}  // namespace perilap
