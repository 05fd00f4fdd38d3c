// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "json_io.hpp"

#include "perilap/error.hpp"

namespace perilap {

namespace {

// Below this reciprocal condition number the second-kind operator is treated
// as singular; for admissible geometry it is O(1).
constexpr double kSingularRcond = 1e-13;
constexpr double kResidualTarget = 1e-12;

}  // namespace

std::vector<double> sample_datum(const std::function<double(double)>& g, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[j] = g(2.0 * std::numbers::pi * j / n);
  return out;
}

Density build_rhs(const NeumannProblem& problem, const BoundaryMap& bmap) {
  const int n = bmap.size();
  if (static_cast<int>(problem.datum.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "datum size does not match the node count");
  }
  Density rhs;
  rhs.domain = DensityDomain::kReference;
  rhs.values = Eigen::Map<const Eigen::VectorXd>(problem.datum.data(), n);
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(rhs.values[j])) throw Error(ErrorCode::kInvalidArgument, "datum is not finite");
  }
  const Eigen::Map<const Eigen::VectorXd> w(bmap.weights().data(), n);
  const double mean = rhs.values.dot(w) / w.sum();
  rhs.values.array() -= mean;
  rhs.zero_mean = true;
  return rhs;
}

DensitySolution solve_density(const NeumannProblem& problem, const BoundaryMap& bmap) {
  const Density rhs = build_rhs(problem, bmap);
  const Eigen::MatrixXd a = assemble_wstar(bmap).half_plus();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > kSingularRcond)) {
    std::ostringstream msg;
    msg << "second-kind operator is numerically singular (rcond " << rcond << ")";
    throw Error(ErrorCode::kSingularOperator, msg.str());
  }

  DensitySolution out;
  out.theta.domain = DensityDomain::kReference;
  out.theta.values = lu.solve(rhs.values);
  const double scale = std::max(rhs.values.norm(), std::numeric_limits<double>::min());
  Eigen::VectorXd r = rhs.values - a * out.theta.values;
  if (r.norm() > kResidualTarget * scale) {
    out.theta.values += lu.solve(r);
    r = rhs.values - a * out.theta.values;
    out.diagnostics.refined = true;
  }
  out.diagnostics.residual = rhs.values.norm() == 0.0 ? r.norm() : r.norm() / scale;
  out.diagnostics.condition_estimate = 1.0 / rcond;
  out.theta.zero_mean = true;
  return out;
}

Solution::Solution(BoundaryMap bmap, Density theta, Eigen::VectorXd boundary_trace, double constant,
                   SolveDiagnostics diagnostics)
    : bmap_(std::move(bmap)),
      theta_(std::move(theta)),
      trace_(std::move(boundary_trace)),
      constant_(constant),
      diagnostics_(diagnostics) {}

Density Solution::mu() const {
  Density mu = theta_;
  mu.domain = DensityDomain::kPhysical;
  return mu;
}

Eigen::VectorXd Solution::boundary_values() const { return trace_.array() + constant_; }

double Solution::boundary_integral() const {
  const Eigen::Map<const Eigen::VectorXd> w(bmap_.weights().data(), bmap_.size());
  return boundary_values().dot(w);
}

FieldValue Solution::eval(const Vec2& x) const {
  if (bmap_.in_hole(x)) throw Error(ErrorCode::kDomain, "evaluation point lies inside a hole");
  const LayerValue v = single_layer_offboundary(bmap_, theta_, x);
  return {v.value + constant_, v.near_boundary};
}

FieldGradient Solution::eval_grad(const Vec2& x) const {
  if (bmap_.in_hole(x)) throw Error(ErrorCode::kDomain, "evaluation point lies inside a hole");
  const LayerGradient g = gradient_offboundary(bmap_, theta_, x);
  return {g.grad, g.near_boundary};
}

std::string Solution::to_json() const {
  nlohmann::ordered_json doc;
  auto nodes = nlohmann::ordered_json::array();
  for (const Vec2& p : bmap_.nodes()) nodes.push_back({p.x, p.y});
  doc["nodes"] = std::move(nodes);
  doc["theta"] = std::vector<double>(theta_.values.data(), theta_.values.data() + theta_.values.size());
  doc["constant"] = constant_;
  doc["residual"] = diagnostics_.residual;
  doc["perimeter"] = bmap_.perimeter();
  doc["condition_estimate"] = diagnostics_.condition_estimate;
  doc["node_count"] = bmap_.size();
  doc["cell"] = {bmap_.cell().q11(), bmap_.cell().q22()};
  return detail::dump17(doc);
}

Solution solve(const NeumannProblem& problem) {
  BoundaryMap bmap = BoundaryMap::build(problem.cell, problem.diffeo, problem.node_count, problem.boundary_options);
  DensitySolution density = solve_density(problem, bmap);
  Eigen::VectorXd trace = assemble_single_layer(bmap) * density.theta.values;
  const Eigen::Map<const Eigen::VectorXd> w(bmap.weights().data(), bmap.size());
  const double constant = (problem.k - trace.dot(w)) / bmap.perimeter();
  return Solution(std::move(bmap), std::move(density.theta), std::move(trace), constant, density.diagnostics);
}

}  // namespace perilap
