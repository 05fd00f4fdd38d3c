// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations used only by the test suites. Nothing
// here calls into the Ewald evaluator or the Nystrom machinery.

#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace perilap::oracle {

// Gaussian-regularized direct Fourier sum of the periodic Green's function,
//   S_eps(x) = -1/|Q| sum_{z != 0} exp(-eps |z|^2) cos(2 pi (q^{-1} z).x) / (4 pi^2 |q^{-1} z|^2).
// The damping exp(-eps |Q| |q^{-1} z|^2) is an isotropic heat flow of duration
// t = eps |Q| / (4 pi^2). Off the lattice Laplacian S = -1/|Q| and all higher
// powers of the Laplacian vanish, so S_eps = S - t / |Q| up to terms of size
// exp(-d^2 / (4 t)), d the distance to the lattice. A two-level Richardson
// step in eps therefore recovers S.
inline double regularized_fourier_sum(double q11, double q22, double x, double y, double eps) {
  const double pi = std::numbers::pi;
  const double measure = q11 * q22;
  const double fmax = std::sqrt(46.0 / (eps * measure));
  const int cut1 = static_cast<int>(std::ceil(fmax * q11)) + 1;
  const int cut2 = static_cast<int>(std::ceil(fmax * q22)) + 1;
  double sum = 0.0;
  for (int i = -cut1; i <= cut1; ++i) {
    for (int j = -cut2; j <= cut2; ++j) {
      if (i == 0 && j == 0) continue;
      const double f1 = i / q11;
      const double f2 = j / q22;
      const double f2sum = f1 * f1 + f2 * f2;
      const double damp = std::exp(-eps * measure * f2sum);
      if (damp < 1e-20) continue;
      sum += damp * std::cos(2.0 * pi * (f1 * x + f2 * y)) / (4.0 * pi * pi * f2sum);
    }
  }
  return -sum / measure;
}

inline double greens_by_fourier_sum(double q11, double q22, double x, double y) {
  const double eps = 0.01;
  const double coarse = regularized_fourier_sum(q11, q22, x, y, eps);
  const double fine = regularized_fourier_sum(q11, q22, x, y, eps / 2.0);
  return 2.0 * fine - coarse;
}

// Adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 50) {
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return run(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + run(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    }
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec{f}.run(a, b, fa, fm, fb, whole, tol, depth);
}

// Arc length of the ellipse (a cos t, b sin t), t in [0, 2 pi).
inline double ellipse_perimeter(double a, double b) {
  auto speed = [&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };
  double total = 0.0;
  const double pi = std::numbers::pi;
  for (int k = 0; k < 8; ++k) total += adaptive_simpson(speed, k * pi / 4.0, (k + 1) * pi / 4.0, 1e-15);
  return total;
}

// Polynomial extrapolation to h = 0 (Neville) from samples (h_i, f_i).
inline double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& f) {
  std::vector<double> p = f;
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
    }
  }
  return p[0];
}

// Proper segment intersection test for two segments (a,b) and (c,d),
// including collinear overlap. Brute-force reference for polyline checks.
inline bool segments_intersect(double ax, double ay, double bx, double by, double cx, double cy, double dx,
                               double dy) {
  auto orient = [](double px, double py, double qx, double qy, double rx, double ry) {
    const double v = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    return (v > 0) - (v < 0);
  };
  auto on_segment = [](double px, double py, double qx, double qy, double rx, double ry) {
    return std::min(px, qx) <= rx && rx <= std::max(px, qx) && std::min(py, qy) <= ry && ry <= std::max(py, qy);
  };
  const int o1 = orient(ax, ay, bx, by, cx, cy);
  const int o2 = orient(ax, ay, bx, by, dx, dy);
  const int o3 = orient(cx, cy, dx, dy, ax, ay);
  const int o4 = orient(cx, cy, dx, dy, bx, by);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(ax, ay, bx, by, cx, cy)) return true;
  if (o2 == 0 && on_segment(ax, ay, bx, by, dx, dy)) return true;
  if (o3 == 0 && on_segment(cx, cy, dx, dy, ax, ay)) return true;
  if (o4 == 0 && on_segment(cx, cy, dx, dy, bx, by)) return true;
  return false;
}

}  // namespace perilap::oracle
