// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include <json.hpp>

#include "json_io.hpp"

#include "perilap/error.hpp"

namespace perilap {
namespace {

constexpr double kPi = std::numbers::pi;

// Polynomial extrapolation of f(h) to h = 0 through all samples (Neville).
double extrapolate(const std::vector<double>& h, std::vector<double> f) {
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      f[i] = (h[i + level] * f[i] - h[i] * f[i + 1]) / (h[i + level] - h[i]);
    }
  }
  return f[0];
}

class Recorder {
 public:
  explicit Recorder(VerifyReport& report) : report_(report) {}

  void check(const std::string& suite, const std::string& geometry, const std::string& name, double tol,
             const std::function<double()>& measure) {
    VerifyCheck c{suite, geometry, name, 0.0, tol, false, {}};
    try {
      c.value = measure();
      c.passed = std::isfinite(c.value) && c.value <= tol;
    } catch (const std::exception& e) {
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.note = e.what();
    }
    report_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& report_;
};

std::vector<Vec2> random_cell_points(const PeriodicCell& cell, int count, double clearance, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec2> out;
  while (static_cast<int>(out.size()) < count) {
    const Vec2 x{cell.q11() * unit(rng), cell.q22() * unit(rng)};
    if (cell.lattice_distance(x) >= clearance) out.push_back(x);
  }
  return out;
}

void greens_suite(Recorder& rec, const PeriodicCell& cell, int count, std::mt19937_64& rng) {
  const double qmin = std::min(cell.q11(), cell.q22());
  const auto pts = random_cell_points(cell, count, 0.05 * qmin, rng);
  // Off-lattice points for the finite-difference Laplacian, whose truncation
  // error grows like h^2 / r^4 near a lattice point.
  const auto poisson_pts = random_cell_points(cell, 10, std::min(0.2, 0.4 * qmin), rng);
  const Vec2 q1{cell.q11(), 0.0}, q2{0.0, cell.q22()};
  rec.check("greens", "-", "evenness", 1e-10, [&] {
    double worst = 0.0;
    for (const Vec2& x : pts) worst = std::max(worst, std::abs(cell.greens(x) - cell.greens(-x)));
    return worst;
  });
  rec.check("greens", "-", "periodicity", 1e-10, [&] {
    double worst = 0.0;
    for (const Vec2& x : pts) {
      const double s = cell.greens(x);
      for (Vec2 z : {q1, q2, q1 * -2.0 + q2 * 3.0}) worst = std::max(worst, std::abs(cell.greens(x + z) - s));
    }
    return worst;
  });
  rec.check("greens", "-", "ewald independence", 1e-10, [&] {
    const PeriodicCell wide(cell.q11(), cell.q22(), 2.0 * cell.ewald_xi());
    const PeriodicCell narrow(cell.q11(), cell.q22(), 0.5 * cell.ewald_xi());
    double worst = 0.0;
    for (const Vec2& x : pts) {
      const double s = cell.greens(x);
      worst = std::max({worst, std::abs(wide.greens(x) - s), std::abs(narrow.greens(x) - s)});
    }
    return worst;
  });
  rec.check("greens", "-", "poisson residual h=1e-3", 1e-4, [&] {
    double worst = 0.0;
    for (const Vec2& x : poisson_pts) worst = std::max(worst, std::abs(cell.poisson_residual(x, 1e-3)));
    return worst;
  });
  // Second-order decay: halving h divides the residual by about 4.
  rec.check("greens", "-", "poisson order |log2 ratio - 2|", 0.25, [&] {
    double worst = 0.0;
    for (const Vec2& x : poisson_pts) {
      const double coarse = std::abs(cell.poisson_residual(x, 4e-3));
      const double fine = std::abs(cell.poisson_residual(x, 2e-3));
      if (coarse < 1e-9) continue;  // residual already below the rounding level
      worst = std::max(worst, std::abs(std::log2(coarse / fine) - 2.0));
    }
    return worst;
  });
}

struct Geometry {
  std::string name;
  DiffeoMap diffeo;
};

// Quadrature size for the extrapolation oracle; independent of how coarse the
// solver discretization is.
int oracle_nodes(int n) { return 32 * std::max(n, 128); }

// Normal-derivative limit of the single layer from the given side.
double normal_limit(const BoundaryMap& fine, const Density& mu_fine, Vec2 x, Vec2 nu, double side) {
  const double h = fine.perimeter() / fine.size();
  std::vector<double> ds, vals;
  for (int k = 1; k <= 6; ++k) {
    const double d = 4.0 * h * k;
    ds.push_back(d);
    vals.push_back(dot(nu, gradient_offboundary(fine, mu_fine, x + nu * (side * d)).grad));
  }
  return extrapolate(ds, vals);
}

void operator_suite(Recorder& rec, const PeriodicCell& cell, const Geometry& g, const VerifySpec& spec,
                    std::mt19937_64& rng) {
  const BoundaryOptions options{spec.flip_normals};
  const int n = spec.node_count;
  const auto b = BoundaryMap::build(cell, g.diffeo, n, options);
  const auto wstar = assemble_wstar(b);

  rec.check("operators", g.name, "gauss identity", 1e-8, [&] {
    const double expected = 0.5 - b.enclosed_area() / cell.measure();
    double worst = 0.0;
    for (int m = 0; m < n; ++m) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += b.weights()[j] * wstar.matrix()(j, m);
      worst = std::max(worst, std::abs(s / b.weights()[m] - expected));
    }
    return worst;
  });

  rec.check("operators", g.name, "zero-mean preservation", 1e-10, [&] {
    std::normal_distribution<double> normal;
    Density mu;
    mu.values.resize(n);
    for (int j = 0; j < n; ++j) mu.values[j] = normal(rng);
    mu.values.array() -= weighted_sum(mu, b) / b.perimeter();
    mu.zero_mean = true;
    return std::abs(weighted_sum(apply_half_plus_wstar(wstar, mu), b));
  });

  Density mu;
  mu.values.resize(n);
  for (int j = 0; j < n; ++j) mu.values[j] = std::cos(b.params()[j]) + 0.3 * std::sin(2.0 * b.params()[j]);
  const Eigen::VectorXd kmu = wstar.matrix() * mu.values;
  const auto fine = BoundaryMap::build(cell, g.diffeo, oracle_nodes(n), options);
  const auto mu_fine = resample(mu, fine.size());
  for (const double side : {1.0, -1.0}) {
    rec.check("operators", g.name, side > 0 ? "jump relation exterior" : "jump relation interior", 1e-6, [&] {
      double worst = 0.0;
      for (int j = 0; j < n; j += std::max(1, n / 8)) {
        const double limit = normal_limit(fine, mu_fine, b.nodes()[j], b.normals()[j], side);
        worst = std::max(worst, std::abs(limit - (0.5 * side * mu.values[j] + kmu[j])));
      }
      return worst;
    });
  }
}

void problem_suite(Recorder& rec, const PeriodicCell& cell, const Geometry& g, const VerifySpec& spec,
                   std::mt19937_64& rng) {
  const int n = spec.node_count;
  const double k = 1.0;
  NeumannProblem problem{cell, g.diffeo, sample_datum([](double t) { return std::cos(t); }, n), k, n,
                         BoundaryOptions{spec.flip_normals}};
  std::optional<Solution> sol;
  std::string failure;
  try {
    sol.emplace(solve(problem));
  } catch (const std::exception& e) {
    failure = e.what();
  }
  auto guarded = [&](const std::function<double()>& f) {
    return [&, f] {
      if (!sol) throw Error(ErrorCode::kSingularOperator, "solve failed: " + failure);
      return f();
    };
  };

  // 20 probes away from the hole.
  std::vector<Vec2> probes;
  if (sol) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double clearance =
        std::max(std::min(0.15, 0.3 * std::min(cell.q11(), cell.q22())), near_boundary_distance(sol->boundary()));
    int tries = 0;
    while (probes.size() < 20 && tries++ < 100000) {
      const Vec2 x{cell.q11() * unit(rng), cell.q22() * unit(rng)};
      if (!sol->boundary().in_hole(x) && sol->boundary().node_distance(x) >= clearance) probes.push_back(x);
    }
  }

  rec.check("problem", g.name, "harmonicity (FD, h=1e-3)", 1e-4, guarded([&] {
              const double h = 1e-3;
              double worst = 0.0;
              for (const Vec2& x : probes) {
                const double lap = (sol->eval(x + Vec2{h, 0}).value + sol->eval(x - Vec2{h, 0}).value +
                                    sol->eval(x + Vec2{0, h}).value + sol->eval(x - Vec2{0, h}).value -
                                    4.0 * sol->eval(x).value) /
                                   (h * h);
                worst = std::max(worst, std::abs(lap));
              }
              return worst;
            }));
  rec.check("problem", g.name, "periodicity", 1e-12, guarded([&] {
              double worst = 0.0;
              const Vec2 q1{cell.q11(), 0.0}, q2{0.0, cell.q22()};
              for (const Vec2& x : probes) {
                const double u = sol->eval(x).value;
                for (Vec2 z : {q1, q2, q1 - q2 * 2.0}) worst = std::max(worst, std::abs(sol->eval(x + z).value - u));
              }
              return worst;
            }));
  rec.check("problem", g.name, "neumann condition", 1e-6, guarded([&] {
              const auto& b = sol->boundary();
              const auto fine = BoundaryMap::build(cell, g.diffeo, oracle_nodes(n), BoundaryOptions{spec.flip_normals});
              const auto mu_fine = resample(sol->mu(), fine.size());
              const auto rhs = build_rhs(problem, b);
              double worst = 0.0;
              for (int j = 0; j < n; j += std::max(1, n / 8)) {
                const double limit = normal_limit(fine, mu_fine, b.nodes()[j], b.normals()[j], 1.0);
                worst = std::max(worst, std::abs(limit - rhs.values[j]));
              }
              return worst;
            }));
  rec.check("problem", g.name, "boundary integral - k", 1e-8 * (1.0 + std::abs(k)),
            guarded([&] { return std::abs(sol->boundary_integral() - k); }));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

bool VerifyReport::all_passed() const noexcept {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::string VerifyReport::table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-8s %-32s %-10s %-10s %s\n", "suite", "geometry", "check", "value",
                "tolerance", "result");
  out += line;
  for (const VerifyCheck& c : checks) {
    std::snprintf(line, sizeof line, "%-10s %-8s %-32s %-10s %-10s %s\n", c.suite.c_str(), c.geometry.c_str(),
                  c.name.c_str(), fmt(c.value).c_str(), fmt(c.tolerance).c_str(), c.passed ? "PASS" : "FAIL");
    out += line;
    if (!c.note.empty()) out += "    " + c.note + "\n";
  }
  const auto passed = std::count_if(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
  out += std::to_string(passed) + "/" + std::to_string(checks.size()) + " checks passed\n";
  return out;
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["cell"] = {q11, q22};
  doc["seed"] = seed;
  doc["all_passed"] = all_passed();
  auto arr = nlohmann::ordered_json::array();
  for (const VerifyCheck& c : checks) {
    nlohmann::ordered_json e;
    e["suite"] = c.suite;
    e["geometry"] = c.geometry;
    e["check"] = c.name;
    e["value"] = std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nlohmann::ordered_json(nullptr);
    e["tolerance"] = c.tolerance;
    e["passed"] = c.passed;
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(std::move(e));
  }
  doc["checks"] = std::move(arr);
  return detail::dump17(doc);
}

VerifyReport run_verify(const PeriodicCell& cell, const VerifySpec& spec, std::uint64_t seed) {
  VerifyReport report;
  report.q11 = cell.q11();
  report.q22 = cell.q22();
  report.seed = seed;
  Recorder rec(report);
  std::mt19937_64 rng(seed);
  greens_suite(rec, cell, spec.random_points, rng);
  // Physical shapes scaled by the shorter edge, pulled back to reference coordinates.
  const double m = std::min(cell.q11(), cell.q22());
  const Vec2 s{m / cell.q11(), m / cell.q22()};
  const std::vector<Geometry> geometries = {
      {"circle", DiffeoMap(ReferenceCurve::ellipse({0.5, 0.5}, 0.25 * s.x, 0.25 * s.y))},
      {"ellipse", DiffeoMap(ReferenceCurve::ellipse({0.5, 0.5}, 0.2 * s.x, 0.1 * s.y))},
  };
  for (const Geometry& g : geometries) {
    try {
      operator_suite(rec, cell, g, spec, rng);
    } catch (const std::exception& e) {
      rec.check("operators", g.name, "setup", 0.0, [&]() -> double { throw Error(ErrorCode::kInvalidGeometry, e.what()); });
    }
    problem_suite(rec, cell, g, spec, rng);
  }
  return report;
}

}  // namespace perilap
