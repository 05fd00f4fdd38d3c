// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "perilap/error.hpp"
#include "perilap/solver.hpp"

using namespace perilap;

namespace {

constexpr double kPi = std::numbers::pi;

NeumannProblem circle_problem(std::function<double(double)> g, double k, int n = 128,
                              PeriodicCell cell = PeriodicCell(1.0, 1.0)) {
  return NeumannProblem{cell, DiffeoMap(ReferenceCurve::circle({0.5, 0.5}, 0.25)), sample_datum(g, n), k, n, {}};
}

// 20 probes in the exterior of the centered hole, kept away from the boundary.
std::vector<Vec2> probes() {
  std::vector<Vec2> out;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Vec2 p{0.07 + 0.2 * i, 0.04 + 0.25 * j};
      if (norm(p - Vec2{0.5, 0.5}) > 0.33) out.push_back(p);
    }
  }
  out.push_back({0.93, 0.52});
  out.push_back({0.12, 0.61});
  return out;
}

double cos_t(double t) { return std::cos(t); }

}  // namespace

TEST_CASE("right-hand side projection") {
  const auto p = circle_problem([](double) { return 5.0; }, 0.0);
  const auto b = BoundaryMap::build(p.cell, p.diffeo, p.node_count);
  CHECK(build_rhs(p, b).values.cwiseAbs().maxCoeff() <= 1e-14);

  const auto pc = circle_problem(cos_t, 0.0);
  const auto rc = build_rhs(pc, b);
  CHECK(rc.zero_mean);
  for (int j = 0; j < b.size(); ++j) CHECK(std::abs(rc.values[j] - std::cos(b.params()[j])) <= 1e-15);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  NeumannProblem pr{PeriodicCell(1.4, 0.8), DiffeoMap(ReferenceCurve::ellipse({0.5, 0.5}, 0.2, 0.1)), {}, 0.0, 128, {}};
  for (int j = 0; j < 128; ++j) pr.datum.push_back(unif(rng));
  const auto br = BoundaryMap::build(pr.cell, pr.diffeo, 128);
  CHECK(std::abs(weighted_sum(build_rhs(pr, br), br)) <= 1e-14);
}

TEST_CASE("trivial data give zero density") {
  for (double c : {0.0, 2.0}) {
    const auto p = circle_problem([c](double) { return c; }, 0.0);
    const auto b = BoundaryMap::build(p.cell, p.diffeo, p.node_count);
    CHECK(solve_density(p, b).theta.values.cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("density solve residual and refinement") {
  const auto p = circle_problem(cos_t, 0.0, 128);
  const auto b = BoundaryMap::build(p.cell, p.diffeo, 128);
  const auto sol = solve_density(p, b);
  const auto rhs = build_rhs(p, b);
  const Eigen::VectorXd r = assemble_wstar(b).half_plus() * sol.theta.values - rhs.values;
  CHECK(r.norm() <= 1e-12 * rhs.values.norm());
  CHECK(sol.diagnostics.residual <= 1e-12);
  CHECK(sol.diagnostics.condition_estimate >= 1.0);
  CHECK(std::abs(weighted_sum(sol.theta, b)) <= 1e-12);

  const auto p2 = circle_problem(cos_t, 0.0, 256);
  const auto b2 = BoundaryMap::build(p2.cell, p2.diffeo, 256);
  const auto sol2 = solve_density(p2, b2);
  double worst = 0.0;
  for (int j = 0; j < 128; ++j) worst = std::max(worst, std::abs(sol.theta.values[j] - sol2.theta.values[2 * j]));
  CHECK(worst <= 1e-9);
}

TEST_CASE("constant-only solution") {
  const auto sol = solve(circle_problem([](double) { return 0.0; }, 3.0));
  CHECK(sol.theta().values.cwiseAbs().maxCoeff() == 0.0);
  for (const Vec2& x : probes()) {
    CHECK(std::abs(sol.eval(x).value - 6.0 / kPi) <= 1e-12);
    CHECK(norm(sol.eval_grad(x).grad) == 0.0);
  }
}

TEST_CASE("affine in k and invariant under shifts of g") {
  const auto s0 = solve(circle_problem(cos_t, 0.0));
  const auto s1 = solve(circle_problem(cos_t, 1.0));
  const auto shifted = solve(circle_problem([](double t) { return std::cos(t) + 4.0; }, 0.0));
  for (const Vec2& x : probes()) {
    CHECK(std::abs(s1.eval(x).value - s0.eval(x).value - 1.0 / s0.perimeter()) <= 1e-13);
    CHECK(std::abs(shifted.eval(x).value - s0.eval(x).value) <= 1e-13);
  }
}

TEST_CASE("linearity in the datum") {
  auto g1 = [](double t) { return std::cos(t); };
  auto g2 = [](double t) { return std::sin(2 * t) + 0.2 * std::cos(3 * t); };
  const auto a = solve(circle_problem(g1, 0.0));
  const auto b = solve(circle_problem(g2, 0.0));
  const auto ab = solve(circle_problem([&](double t) { return g1(t) + g2(t); }, 0.0));
  for (const Vec2& x : probes()) CHECK(std::abs(ab.eval(x).value - a.eval(x).value - b.eval(x).value) <= 1e-12);
}

TEST_CASE("problem residuals on the circle") {
  const auto sol = solve(circle_problem(cos_t, 1.0));

  SUBCASE("boundary integral") { CHECK(std::abs(sol.boundary_integral() - 1.0) <= 1e-8); }

  SUBCASE("periodicity") {
    for (const Vec2& x : probes()) {
      const double u = sol.eval(x).value;
      for (Vec2 z : {Vec2{1, 0}, Vec2{0, 1}, Vec2{-2, 3}}) CHECK(std::abs(sol.eval(x + z).value - u) <= 1e-12);
    }
  }

  SUBCASE("harmonicity") {
    const double h = 1e-3;
    for (const Vec2& x : probes()) {
      const double lap = (sol.eval(x + Vec2{h, 0}).value + sol.eval(x - Vec2{h, 0}).value +
                          sol.eval(x + Vec2{0, h}).value + sol.eval(x - Vec2{0, h}).value - 4 * sol.eval(x).value) /
                         (h * h);
      CHECK(std::abs(lap) <= 1e-4);
    }
  }

  SUBCASE("gradient matches finite differences") {
    const double h = 1e-5;
    for (const Vec2& x : probes()) {
      const Vec2 g = sol.eval_grad(x).grad;
      CHECK(std::abs(g.x - (sol.eval(x + Vec2{h, 0}).value - sol.eval(x - Vec2{h, 0}).value) / (2 * h)) <= 1e-6);
      CHECK(std::abs(g.y - (sol.eval(x + Vec2{0, h}).value - sol.eval(x - Vec2{0, h}).value) / (2 * h)) <= 1e-6);
    }
  }

  SUBCASE("Neumann condition by extrapolation") {
    const auto& b = sol.boundary();
    const auto fine = BoundaryMap::build(b.cell(), DiffeoMap(ReferenceCurve::circle({0.5, 0.5}, 0.25)), 32 * b.size());
    const auto mu_fine = resample(sol.mu(), fine.size());
    const double hf = fine.perimeter() / fine.size();
    double worst = 0.0;
    for (int j = 0; j < b.size(); j += 8) {
      std::vector<double> ds, vals;
      for (int m = 1; m <= 6; ++m) {
        const double d = 4.0 * hf * m;
        ds.push_back(d);
        vals.push_back(dot(b.normals()[j], gradient_offboundary(fine, mu_fine, b.nodes()[j] + b.normals()[j] * d).grad));
      }
      worst = std::max(worst, std::abs(oracle::extrapolate_to_zero(ds, vals) - std::cos(b.params()[j])));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("resolution independence at interior probes") {
  NeumannProblem p{PeriodicCell(1.2, 0.9), DiffeoMap(ReferenceCurve::ellipse({0.5, 0.5}, 0.2, 0.12)), {}, 0.5, 64, {}};
  auto g = [](double t) { return std::cos(t) + 0.4 * std::sin(3 * t); };
  p.datum = sample_datum(g, 64);
  const auto coarse = solve(p);
  p.node_count = 128;
  p.datum = sample_datum(g, 128);
  const auto fine = solve(p);
  for (const Vec2& x : probes()) {
    const Vec2 y{x.x * 1.2, x.y * 0.9};
    if (coarse.boundary().in_hole(y) || coarse.boundary().node_distance(y) < 0.05) continue;
    CHECK(std::abs(coarse.eval(y).value - fine.eval(y).value) <= 1e-8);
  }
}

TEST_CASE("domain and guard behavior") {
  const auto sol = solve(circle_problem(cos_t, 0.0));
  try {
    sol.eval({0.5, 0.5});
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
  CHECK_THROWS_AS(sol.eval_grad({1.5, -0.5}), Error);
  const auto& b = sol.boundary();
  CHECK(sol.eval(b.nodes()[0] + b.normals()[0] * 1e-3).near_boundary);
  CHECK_FALSE(sol.eval({0.05, 0.05}).near_boundary);

  NeumannProblem bad = circle_problem(cos_t, 0.0);
  bad.diffeo = DiffeoMap(ReferenceCurve::circle({0.5, 0.5}, 0.7));
  CHECK_THROWS_AS(solve(bad), Error);
}

TEST_CASE("JSON summary") {
  const auto sol = solve(circle_problem(cos_t, 1.0, 64));
  const auto j = nlohmann::json::parse(sol.to_json());
  for (const char* key : {"nodes", "theta", "constant", "residual", "perimeter"}) CHECK(j.contains(key));
  CHECK(j["theta"].size() == 64);
  CHECK(j["constant"].get<double>() == sol.constant());
  CHECK(sol.to_json() == solve(circle_problem(cos_t, 1.0, 64)).to_json());
}
