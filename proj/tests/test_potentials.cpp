// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "perilap/error.hpp"
#include "perilap/potentials.hpp"

using namespace perilap;

namespace {

constexpr double kPi = std::numbers::pi;

DiffeoMap circle(double r) { return DiffeoMap(ReferenceCurve::circle({0.5, 0.5}, r)); }
DiffeoMap ellipse() { return DiffeoMap(ReferenceCurve::ellipse({0.5, 0.5}, 0.2, 0.1)); }

Density sample(const BoundaryMap& b, double (*f)(double)) {
  Density mu;
  mu.values.resize(b.size());
  for (int j = 0; j < b.size(); ++j) mu.values[j] = f(b.params()[j]);
  return mu;
}

double smooth_density(double t) { return std::cos(t) + 0.3 * std::sin(2 * t); }

// Normal-derivative limit of the single layer from one side, by extrapolation
// of quadrature on a 32x refined boundary. side = +1 exterior, -1 interior.
double normal_limit(const BoundaryMap& fine, const Density& mu_fine, Vec2 x, Vec2 nu, int side) {
  const double h = fine.perimeter() / fine.size();
  std::vector<double> ds, vals;
  for (int k = 1; k <= 6; ++k) {
    const double d = 4.0 * h * k;
    ds.push_back(d);
    vals.push_back(dot(nu, gradient_offboundary(fine, mu_fine, x + nu * (side * d)).grad));
  }
  return oracle::extrapolate_to_zero(ds, vals);
}

double value_limit(const BoundaryMap& fine, const Density& mu_fine, Vec2 x, Vec2 nu) {
  const double h = fine.perimeter() / fine.size();
  std::vector<double> ds, vals;
  for (int k = 1; k <= 6; ++k) {
    const double d = 4.0 * h * k;
    ds.push_back(d);
    vals.push_back(single_layer_offboundary(fine, mu_fine, x + nu * d).value);
  }
  return oracle::extrapolate_to_zero(ds, vals);
}

}  // namespace

TEST_CASE("discrete Gauss identity") {
  const PeriodicCell unit(1.0, 1.0);
  for (const DiffeoMap& d : {circle(0.25), ellipse()}) {
    const auto b = BoundaryMap::build(unit, d, 128);
    const auto k = assemble_wstar(b).matrix();
    // Shoelace area of fine node polygons; the O(N^-2) polygon error is removed by one
    // Richardson step.
    auto polygon_area = [&](int n) {
      const auto fine = BoundaryMap::build(unit, d, n);
      double a = 0.0;
      for (int j = 0; j < n; ++j) a += 0.5 * cross(fine.nodes()[j], fine.nodes()[(j + 1) % n]);
      return std::abs(a);
    };
    const double a1 = polygon_area(4096), a2 = polygon_area(8192);
    const double shoelace = a2 + (a2 - a1) / 3.0;
    const double expected = 0.5 - std::abs(shoelace) / unit.measure();
    double worst = 0.0;
    for (int m = 0; m < b.size(); ++m) {
      double s = 0.0;
      for (int j = 0; j < b.size(); ++j) s += b.weights()[j] * k(j, m);
      worst = std::max(worst, std::abs(s / b.weights()[m] - expected));
    }
    CHECK(worst <= 1e-8);

    // Integrated form on a circle: sum_j w_j (1/2 + (K 1)_j) = perimeter (1 - area/|Q|).
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(b.weights().data(), b.size());
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(b.size());
    const double lhs = w.dot(0.5 * ones + k * ones);
    CHECK(std::abs(lhs - b.perimeter() * (1.0 - std::abs(shoelace) / unit.measure())) <= 1e-8);
  }
}

TEST_CASE("zero-mean preservation and linearity") {
  const auto b = BoundaryMap::build(PeriodicCell(1.3, 0.9), ellipse(), 128);
  const auto wstar = assemble_wstar(b);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Density mu1, mu2;
  mu1.values.resize(b.size());
  mu2.values.resize(b.size());
  for (int j = 0; j < b.size(); ++j) {
    mu1.values[j] = normal(rng);
    mu2.values[j] = normal(rng);
  }
  const double mean = weighted_sum(mu1, b) / b.perimeter();
  Density zm = mu1;
  zm.values.array() -= mean;
  zm.zero_mean = true;
  CHECK(std::abs(weighted_sum(zm, b)) <= 1e-12 * b.perimeter());
  const auto out = apply_half_plus_wstar(wstar, zm);
  CHECK(out.zero_mean);
  CHECK(std::abs(weighted_sum(out, b)) <= 1e-10);

  Density combo = mu1;
  combo.values = 2.5 * mu1.values - 0.75 * mu2.values;
  const Eigen::VectorXd lhs = apply_half_plus_wstar(wstar, combo).values;
  const Eigen::VectorXd rhs = 2.5 * apply_half_plus_wstar(wstar, mu1).values - 0.75 * apply_half_plus_wstar(wstar, mu2).values;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13);

  Density zero;
  zero.values = Eigen::VectorXd::Zero(b.size());
  CHECK(apply_half_plus_wstar(wstar, zero).values.cwiseAbs().maxCoeff() == 0.0);

  Density short_mu;
  short_mu.values = Eigen::VectorXd::Zero(10);
  CHECK_THROWS_AS(apply_half_plus_wstar(wstar, short_mu), Error);
}

TEST_CASE("W* self-convergence under refinement") {
  const PeriodicCell unit(1.0, 1.0);
  RadialProfile prof;
  prof.a = {0.0, 0.0, 0.0, 0.2};
  const DiffeoMap star(ReferenceCurve::radial({0.5, 0.5}, 0.25, prof));
  for (const DiffeoMap& d : {circle(0.25), star}) {
    const auto coarse = BoundaryMap::build(unit, d, 128);
    const auto fine = BoundaryMap::build(unit, d, 512);
    const auto out_c = apply_half_plus_wstar(assemble_wstar(coarse), sample(coarse, [](double t) { return std::cos(t); }));
    const auto out_f = apply_half_plus_wstar(assemble_wstar(fine), sample(fine, [](double t) { return std::cos(t); }));
    double worst = 0.0;
    for (int j = 0; j < coarse.size(); ++j) worst = std::max(worst, std::abs(out_c.values[j] - out_f.values[4 * j]));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("on-boundary single layer") {
  const PeriodicCell unit(1.0, 1.0);
  SUBCASE("self-convergence N vs 2N on a circle") {
    const auto b1 = BoundaryMap::build(unit, circle(0.25), 64);
    const auto b2 = BoundaryMap::build(unit, circle(0.25), 128);
    const auto v1 = single_layer_onboundary(b1, sample(b1, smooth_density));
    const auto v2 = single_layer_onboundary(b2, sample(b2, smooth_density));
    double worst = 0.0;
    for (int j = 0; j < b1.size(); ++j) worst = std::max(worst, std::abs(v1[j] - v2[2 * j]));
    CHECK(worst <= 1e-9);
  }
  SUBCASE("continuity with the exterior limit") {
    for (const DiffeoMap& d : {circle(0.25), ellipse()}) {
      const auto b = BoundaryMap::build(unit, d, 128);
      const auto mu = sample(b, smooth_density);
      const auto on = single_layer_onboundary(b, mu);
      const auto fine = BoundaryMap::build(unit, d, 128 * 32);
      const auto mu_fine = resample(mu, fine.size());
      for (int j = 0; j < b.size(); j += 16) {
        CHECK(std::abs(value_limit(fine, mu_fine, b.nodes()[j], b.normals()[j]) - on[j]) <= 1e-6);
      }
    }
  }
  SUBCASE("zero density") {
    const auto b = BoundaryMap::build(unit, circle(0.25), 64);
    Density zero;
    zero.values = Eigen::VectorXd::Zero(b.size());
    CHECK(single_layer_onboundary(b, zero).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("off-boundary single layer and gradient") {
  const PeriodicCell cell(1.2, 0.9);
  const auto b = BoundaryMap::build(cell, ellipse(), 128);
  const auto mu = sample(b, smooth_density);
  const std::vector<Vec2> targets = {{0.1, 0.1}, {1.0, 0.2}, {0.3, 0.85}, {1.15, 0.8}};

  SUBCASE("periodicity") {
    for (const Vec2& x : targets) {
      const double v = single_layer_offboundary(b, mu, x).value;
      for (Vec2 shift : {Vec2{1.2, 0.0}, Vec2{0.0, -0.9}, Vec2{-2.4, 1.8}}) {
        CHECK(std::abs(single_layer_offboundary(b, mu, x + shift).value - v) <= 1e-12);
      }
    }
  }
  SUBCASE("4x refinement") {
    const auto fine = BoundaryMap::build(cell, ellipse(), 512);
    const auto mu_fine = sample(fine, smooth_density);
    for (const Vec2& x : targets) {
      REQUIRE(b.node_distance(x) >= 0.1);
      CHECK(std::abs(single_layer_offboundary(b, mu, x).value - single_layer_offboundary(fine, mu_fine, x).value) <=
            1e-10);
    }
  }
  SUBCASE("gradient matches finite differences") {
    const double h = 1e-5;
    for (const Vec2& x : targets) {
      const Vec2 g = gradient_offboundary(b, mu, x).grad;
      const double gx = (single_layer_offboundary(b, mu, x + Vec2{h, 0}).value -
                         single_layer_offboundary(b, mu, x - Vec2{h, 0}).value) / (2 * h);
      const double gy = (single_layer_offboundary(b, mu, x + Vec2{0, h}).value -
                         single_layer_offboundary(b, mu, x - Vec2{0, h}).value) / (2 * h);
      CHECK(std::abs(g.x - gx) <= 1e-6);
      CHECK(std::abs(g.y - gy) <= 1e-6);
    }
  }
  SUBCASE("zero density, guards and singular targets") {
    Density zero;
    zero.values = Eigen::VectorXd::Zero(b.size());
    CHECK(single_layer_offboundary(b, zero, targets[0]).value == 0.0);
    CHECK(norm(gradient_offboundary(b, zero, targets[0]).grad) == 0.0);
    CHECK_FALSE(single_layer_offboundary(b, mu, targets[0]).near_boundary);
    const Vec2 close = b.nodes()[5] + b.normals()[5] * (0.5 * near_boundary_distance(b));
    CHECK(single_layer_offboundary(b, mu, close).near_boundary);
    CHECK(gradient_offboundary(b, mu, close).near_boundary);
    try {
      single_layer_offboundary(b, mu, b.nodes()[3]);
      FAIL("expected a singular-target error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSingularTarget);
    }
    CHECK_THROWS_AS(gradient_offboundary(b, mu, b.nodes()[3] + Vec2{1.2, 0.0}), Error);
  }
}

TEST_CASE("jump relation on both sides") {
  const PeriodicCell unit(1.0, 1.0);
  for (const DiffeoMap& d : {circle(0.25), ellipse()}) {
    const auto b = BoundaryMap::build(unit, d, 128);
    const auto wstar = assemble_wstar(b);
    const auto mu = sample(b, smooth_density);
    const Eigen::VectorXd kmu = wstar.matrix() * mu.values;
    const auto fine = BoundaryMap::build(unit, d, 128 * 32);
    const auto mu_fine = resample(mu, fine.size());
    double ext = 0.0, inn = 0.0;
    for (int j = 0; j < b.size(); j += 16) {
      const Vec2 x = b.nodes()[j], nu = b.normals()[j];
      ext = std::max(ext, std::abs(normal_limit(fine, mu_fine, x, nu, +1) - (0.5 * mu.values[j] + kmu[j])));
      inn = std::max(inn, std::abs(normal_limit(fine, mu_fine, x, nu, -1) - (-0.5 * mu.values[j] + kmu[j])));
    }
    CHECK(ext <= 1e-6);
    CHECK(inn <= 1e-6);
  }
}

TEST_CASE("resampling is exact for band-limited densities") {
  const auto b = BoundaryMap::build(PeriodicCell(1.0, 1.0), circle(0.25), 32);
  const auto mu = sample(b, smooth_density);
  const auto up = resample(mu, 96);
  for (int j = 0; j < 96; ++j) CHECK(std::abs(up.values[j] - smooth_density(2 * kPi * j / 96)) <= 1e-14);
}
