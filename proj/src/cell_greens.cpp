// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/cell_greens.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "perilap/error.hpp"

namespace perilap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

// exp(-u) at the truncation boundary is ~4e-18, below double resolution of
// the retained terms.
constexpr double kTruncationExponent = 40.0;

// E1(u) = -Ei(-u) for u > 0.
double exp_integral_e1(double u) { return -std::expint(-u); }

// Ein(u) = E1(u) + gamma + log(u), entire; series for small u.
double entire_exp_integral(double u) {
  if (u > 1.0) return exp_integral_e1(u) + kEulerGamma + std::log(u);
  double term = u;
  double sum = u;
  for (int k = 2; k < 40; ++k) {
    term *= -u / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

PeriodicCell::PeriodicCell(double q11, double q22) : edges_{q11, q22} {
  if (!(q11 > 0.0) || !(q22 > 0.0) || !std::isfinite(q11) || !std::isfinite(q22)) {
    std::ostringstream msg;
    msg << "cell edges must be positive, got (" << q11 << ", " << q22 << ")";
    throw Error(ErrorCode::kInvalidCell, msg.str());
  }
  measure_ = q11 * q22;
  // Equalizes the real-space and reciprocal-space term counts.
  xi_ = std::sqrt(kPi / measure_);
  configure();
}

PeriodicCell::PeriodicCell(double q11, double q22, double ewald_xi) : PeriodicCell(q11, q22) {
  if (!(ewald_xi > 0.0) || !std::isfinite(ewald_xi)) {
    throw Error(ErrorCode::kInvalidCell, "ewald_xi must be positive");
  }
  xi_ = ewald_xi;
  configure();
}

void PeriodicCell::configure() {
  const double aspect = edges_.x / edges_.y;
  if (aspect > kMaxAspect || aspect < 1.0 / kMaxAspect) {
    std::ostringstream msg;
    msg << "cell aspect ratio " << aspect << " outside [1/" << kMaxAspect << ", " << kMaxAspect << "]";
    throw Error(ErrorCode::kInvalidCell, msg.str());
  }
  const double radius = std::sqrt(kTruncationExponent) / xi_;
  const double k_max = 2.0 * xi_ * std::sqrt(kTruncationExponent);
  const double q[2] = {edges_.x, edges_.y};
  for (int d = 0; d < 2; ++d) {
    // The evaluation point is reduced to |x_d| <= q_d / 2 first.
    real_cut_[d] = static_cast<int>(std::ceil(radius / q[d] + 0.5));
    fourier_cut_[d] = static_cast<int>(std::ceil(k_max * q[d] / (2.0 * kPi)));
  }
}

Vec2 PeriodicCell::reduce(const Vec2& x) const noexcept {
  return {x.x - edges_.x * std::round(x.x / edges_.x), x.y - edges_.y * std::round(x.y / edges_.y)};
}

double PeriodicCell::fourier_coefficient(int z1, int z2) const {
  if (z1 == 0 && z2 == 0) {
    throw Error(ErrorCode::kZeroFrequency, "the Green's function series has no z = (0,0) mode");
  }
  const double f1 = z1 / edges_.x;
  const double f2 = z2 / edges_.y;
  return -1.0 / (measure_ * 4.0 * kPi * kPi * (f1 * f1 + f2 * f2));
}

double PeriodicCell::real_space_sum(const Vec2& xr, bool skip_origin) const {
  const double xi2 = xi_ * xi_;
  double sum = 0.0;
  for (int i = -real_cut_[0]; i <= real_cut_[0]; ++i) {
    for (int j = -real_cut_[1]; j <= real_cut_[1]; ++j) {
      if (skip_origin && i == 0 && j == 0) continue;
      const Vec2 d{xr.x - i * edges_.x, xr.y - j * edges_.y};
      const double u = xi2 * norm2(d);
      if (u > kTruncationExponent) continue;
      sum += exp_integral_e1(u);
    }
  }
  return -sum / (4.0 * kPi);
}

double PeriodicCell::fourier_sum(const Vec2& xr) const {
  const int m1 = fourier_cut_[0];
  const int m2 = fourier_cut_[1];
  const double inv4xi2 = 1.0 / (4.0 * xi_ * xi_);
  std::vector<double> c2(m2 + 1), s2(m2 + 1);
  for (int j = 0; j <= m2; ++j) {
    const double phase = 2.0 * kPi * j * xr.y / edges_.y;
    c2[j] = std::cos(phase);
    s2[j] = std::sin(phase);
  }
  // Sum over the half lattice {i > 0} u {i = 0, j > 0}; each pair z, -z
  // contributes twice the cosine.
  double sum = 0.0;
  for (int i = 0; i <= m1; ++i) {
    const double k1 = 2.0 * kPi * i / edges_.x;
    const double phase1 = k1 * xr.x;
    const double c1 = std::cos(phase1);
    const double s1 = std::sin(phase1);
    for (int j = (i == 0 ? 1 : -m2); j <= m2; ++j) {
      const int aj = j < 0 ? -j : j;
      const double k2 = 2.0 * kPi * j / edges_.y;
      const double k2sq = k1 * k1 + k2 * k2;
      const double damp = std::exp(-k2sq * inv4xi2);
      if (damp == 0.0) continue;
      const double sj = j < 0 ? -s2[aj] : s2[aj];
      const double cosine = c1 * c2[aj] - s1 * sj;
      sum += damp * cosine / k2sq;
    }
  }
  return -2.0 * sum / measure_;
}

double PeriodicCell::greens(const Vec2& x) const {
  const Vec2 xr = reduce(x);
  if (xr.x == 0.0 && xr.y == 0.0) {
    throw Error(ErrorCode::kSingularity, "Green's function evaluated on the lattice");
  }
  return real_space_sum(xr, false) + 1.0 / (4.0 * xi_ * xi_ * measure_) + fourier_sum(xr);
}

Vec2 PeriodicCell::greens_grad(const Vec2& x) const {
  const Vec2 xr = reduce(x);
  if (xr.x == 0.0 && xr.y == 0.0) {
    throw Error(ErrorCode::kSingularity, "Green's function gradient evaluated on the lattice");
  }
  const double xi2 = xi_ * xi_;
  Vec2 grad;
  for (int i = -real_cut_[0]; i <= real_cut_[0]; ++i) {
    for (int j = -real_cut_[1]; j <= real_cut_[1]; ++j) {
      const Vec2 d{xr.x - i * edges_.x, xr.y - j * edges_.y};
      const double r2 = norm2(d);
      const double u = xi2 * r2;
      if (u > kTruncationExponent) continue;
      grad += d * (std::exp(-u) / r2);
    }
  }
  grad *= 1.0 / (2.0 * kPi);

  const int m1 = fourier_cut_[0];
  const int m2 = fourier_cut_[1];
  const double inv4xi2 = 1.0 / (4.0 * xi2);
  Vec2 fourier;
  for (int i = 0; i <= m1; ++i) {
    const double k1 = 2.0 * kPi * i / edges_.x;
    for (int j = (i == 0 ? 1 : -m2); j <= m2; ++j) {
      const double k2 = 2.0 * kPi * j / edges_.y;
      const double k2sq = k1 * k1 + k2 * k2;
      const double damp = std::exp(-k2sq * inv4xi2);
      if (damp == 0.0) continue;
      const double weight = damp * std::sin(k1 * xr.x + k2 * xr.y) / k2sq;
      fourier += Vec2{k1, k2} * weight;
    }
  }
  return grad + fourier * (2.0 / measure_);
}

double PeriodicCell::greens_regular(const Vec2& x) const {
  const Vec2 xr = reduce(x);
  const bool same_image = xr.x == x.x && xr.y == x.y;
  if (!same_image) {
    // Away from the origin there is no cancellation to worry about.
    return greens(x) - std::log(norm(x)) / (2.0 * kPi);
  }
  // -E1(u)/(4 pi) - log(r)/(2 pi) with u = xi^2 r^2 equals
  // (gamma - Ein(u))/(4 pi) + log(xi)/(2 pi).
  const double u = xi_ * xi_ * norm2(xr);
  const double origin =
      (kEulerGamma - entire_exp_integral(u)) / (4.0 * kPi) + std::log(xi_) / (2.0 * kPi);
  return origin + real_space_sum(xr, true) + 1.0 / (4.0 * xi_ * xi_ * measure_) + fourier_sum(xr);
}

double PeriodicCell::poisson_residual(const Vec2& x, double h) const {
  const double center = greens(x);
  const double lap = (greens({x.x + h, x.y}) + greens({x.x - h, x.y}) + greens({x.x, x.y + h}) +
                      greens({x.x, x.y - h}) - 4.0 * center) /
                     (h * h);
  return lap + 1.0 / measure_;
}

}  // namespace perilap
