// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/workflows.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "json_io.hpp"
#include "perilap/error.hpp"

namespace perilap {
namespace {

double axis(double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }

}  // namespace

std::string grid_csv(const Solution& sol, const GridSpec& grid) {
  std::string out = "x,y,u,u_x,u_y\n";
  if (!grid.enabled()) return out;
  char buf[160];
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec2 x{axis(grid.x_min, grid.x_max, grid.nx, ix), axis(grid.y_min, grid.y_max, grid.ny, iy)};
      if (sol.boundary().in_hole(x)) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,,,\n", x.x, x.y);
      } else {
        try {
          const double u = sol.eval(x).value;
          const Vec2 g = sol.eval_grad(x).grad;
          std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", x.x, x.y, u, g.x, g.y);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kSingularTarget) throw;
          std::snprintf(buf, sizeof buf, "%.17g,%.17g,,,\n", x.x, x.y);
        }
      }
      out += buf;
    }
  }
  return out;
}

SweepResult run_sweep(const RunConfig& cfg) {
  const ParameterFamily family = cfg.family();
  SweepResult result;
  result.kind = family.kind();
  if (result.kind == FamilyKind::kFixed) {
    throw Error(ErrorCode::kFamilyInvalid, "family invalid: sweep.family varies nothing");
  }
  const int degree = cfg.sweep.degree;
  result.certificate = certify_family(family, chebyshev_points(family.t_min, family.t_max, degree));
  const auto traces = sample_traces(family, cfg.sweep.probes, degree);
  for (std::size_t p = 0; p < traces.size(); ++p) {
    DecayReport r = fit_decay(chebyshev_coefficients(traces[p]));
    r.probe = cfg.sweep.probes[p];
    result.reports.push_back(std::move(r));
  }
  if (cfg.sweep.fd_t0) {
    for (const Vec2& probe : cfg.sweep.probes) {
      result.fd_checks.push_back(fd_derivative_check(family, probe, *cfg.sweep.fd_t0, degree));
    }
  }
  result.all_passed =
      std::all_of(result.reports.begin(), result.reports.end(), [](const DecayReport& r) { return r.passes(); }) &&
      std::all_of(result.fd_checks.begin(), result.fd_checks.end(), [](const DerivativeCheck& c) { return c.agrees; });

  nlohmann::ordered_json doc;
  doc["family"] = to_string(result.kind);
  doc["interval"] = {family.t_min, family.t_max};
  doc["degree"] = degree;
  doc["node_count"] = family.base.node_count;
  doc["certificate"] = {{"certified", result.certificate.certified},
                        {"min_containment_ratio", result.certificate.min_containment_ratio},
                        {"min_speed_ratio", result.certificate.min_speed_ratio}};
  doc["reports"] = nlohmann::ordered_json::parse(to_json(result.reports));
  auto fd = nlohmann::ordered_json::array();
  for (const DerivativeCheck& c : result.fd_checks) {
    nlohmann::ordered_json e;
    e["probe"] = {c.probe.x, c.probe.y};
    e["t0"] = c.t0;
    e["interpolant_derivative"] = c.interpolant_derivative;
    e["steps"] = c.steps;
    e["fd_derivatives"] = c.fd_derivatives;
    e["relative_errors"] = c.relative_errors;
    e["order_steps"] = c.order_steps;
    e["order_derivatives"] = c.order_derivatives;
    e["observed_order"] = c.observed_order;
    e["agrees"] = c.agrees;
    fd.push_back(std::move(e));
  }
  doc["fd_checks"] = std::move(fd);
  doc["all_passed"] = result.all_passed;
  result.json = detail::dump17(doc);
  result.csv = to_csv(result.reports);
  return result;
}

}  // namespace perilap
