// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "perilap/error.hpp"

namespace perilap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinNodeSpeed = 1e-10;

int orient(const Vec2& p, const Vec2& q, const Vec2& r) {
  const double v = cross(q - p, r - p);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(const Vec2& p, const Vec2& q, const Vec2& r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y);
}

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  if (std::max(a.x, b.x) < std::min(c.x, d.x) || std::max(c.x, d.x) < std::min(a.x, b.x) ||
      std::max(a.y, b.y) < std::min(c.y, d.y) || std::max(c.y, d.y) < std::min(a.y, b.y)) {
    return false;
  }
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

}  // namespace

TrigInterpolant::TrigInterpolant(std::span<const double> samples) : samples_(samples.size()) {
  const std::size_t m = samples.size();
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "trigonometric interpolant needs samples");
  const std::size_t modes = m / 2;
  cos_.assign(modes + 1, 0.0);
  sin_.assign(modes + 1, 0.0);
  for (std::size_t k = 0; k <= modes; ++k) {
    double c = 0.0;
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double phase = kTwoPi * static_cast<double>((k * j) % m) / static_cast<double>(m);
      c += samples[j] * std::cos(phase);
      s += samples[j] * std::sin(phase);
    }
    cos_[k] = 2.0 * c / static_cast<double>(m);
    sin_[k] = 2.0 * s / static_cast<double>(m);
  }
  cos_[0] *= 0.5;
  sin_[0] = 0.0;
  if (m % 2 == 0) {
    // The Nyquist mode is shared between +k and -k.
    cos_[modes] *= 0.5;
    sin_[modes] = 0.0;
  }
}

TrigInterpolant::Value TrigInterpolant::eval(double t) const {
  Value v;
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double c = std::cos(kk * t);
    const double s = std::sin(kk * t);
    v.f += cos_[k] * c + sin_[k] * s;
    v.df += kk * (-cos_[k] * s + sin_[k] * c);
    v.d2f -= kk * kk * (cos_[k] * c + sin_[k] * s);
  }
  return v;
}

std::vector<double> TrigInterpolant::resample(int n) const {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[j] = eval(kTwoPi * j / n).f;
  return out;
}

TrigInterpolant::Value RadialProfile::eval(double alpha) const {
  TrigInterpolant::Value v{1.0, 0.0, 0.0};
  const std::size_t modes = std::max(a.size(), b.size());
  for (std::size_t m = 0; m < modes; ++m) {
    const double am = m < a.size() ? a[m] : 0.0;
    const double bm = (m < b.size() && m > 0) ? b[m] : 0.0;
    const double mm = static_cast<double>(m);
    const double c = std::cos(mm * alpha);
    const double s = std::sin(mm * alpha);
    v.f += am * c + bm * s;
    v.df += mm * (-am * s + bm * c);
    v.d2f -= mm * mm * (am * c + bm * s);
  }
  return v;
}

ReferenceCurve ReferenceCurve::circle(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidGeometry, "circle radius must be positive");
  ReferenceCurve c;
  c.kind_ = Kind::kCircle;
  c.center_ = center;
  c.axes_ = {radius, radius};
  return c;
}

ReferenceCurve ReferenceCurve::ellipse(Vec2 center, double semi_x, double semi_y) {
  if (!(semi_x > 0.0) || !(semi_y > 0.0)) {
    throw Error(ErrorCode::kInvalidGeometry, "ellipse semi-axes must be positive");
  }
  ReferenceCurve c;
  c.kind_ = Kind::kEllipse;
  c.center_ = center;
  c.axes_ = {semi_x, semi_y};
  return c;
}

ReferenceCurve ReferenceCurve::radial(Vec2 center, double radius, RadialProfile profile) {
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidGeometry, "radial curve radius must be positive");
  ReferenceCurve c;
  c.kind_ = Kind::kRadial;
  c.center_ = center;
  c.axes_ = {radius, radius};
  c.profile_ = std::move(profile);
  return c;
}

CurvePoint ReferenceCurve::at(double t) const {
  const double c = std::cos(t);
  const double s = std::sin(t);
  switch (kind_) {
    case Kind::kCircle:
    case Kind::kEllipse:
      return {center_ + Vec2{axes_.x * c, axes_.y * s}, {-axes_.x * s, axes_.y * c}, {-axes_.x * c, -axes_.y * s}};
    case Kind::kRadial: {
      const auto rho = profile_.eval(t);
      const double r = axes_.x;
      const Vec2 e{c, s};
      const Vec2 e_perp{-s, c};
      return {center_ + e * (r * rho.f), (e * rho.df + e_perp * rho.f) * r,
              (e * (rho.d2f - rho.f) + e_perp * (2.0 * rho.df)) * r};
    }
  }
  return {};
}

NodeDisplacementMap NodeDisplacementMap::from_nodes(std::span<const Vec2> displacements) {
  std::vector<double> xs(displacements.size());
  std::vector<double> ys(displacements.size());
  for (std::size_t j = 0; j < displacements.size(); ++j) {
    xs[j] = displacements[j].x;
    ys[j] = displacements[j].y;
  }
  return {TrigInterpolant(xs), TrigInterpolant(ys)};
}

DiffeoMap::DiffeoMap(ReferenceCurve curve, MapKind map) : curve_(std::move(curve)), map_(std::move(map)) {}

std::string DiffeoMap::tag() const {
  struct Visitor {
    std::string operator()(const IdentityMap&) const { return "identity"; }
    std::string operator()(const AffineMap&) const { return "affine"; }
    std::string operator()(const RadialMap&) const { return "radial"; }
    std::string operator()(const NodeDisplacementMap&) const { return "nodes"; }
  };
  return std::visit(Visitor{}, map_);
}

CurvePoint DiffeoMap::at(double t) const {
  const CurvePoint g = curve_.at(t);
  struct Visitor {
    const CurvePoint& g;
    double t;
    CurvePoint operator()(const IdentityMap&) const { return g; }
    CurvePoint operator()(const AffineMap& m) const {
      auto apply = [&](const Vec2& v) { return Vec2{m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y}; };
      return {apply(g.p) + m.offset, apply(g.d1), apply(g.d2)};
    }
    CurvePoint operator()(const RadialMap& m) const {
      const Vec2 d = g.p - m.center;
      const double r2 = norm2(d);
      if (r2 == 0.0) throw Error(ErrorCode::kInvalidGeometry, "radial map center lies on the curve");
      const double alpha = std::atan2(d.y, d.x);
      const double c1 = cross(d, g.d1);
      const double a1 = c1 / r2;
      const double a2 = (cross(d, g.d2) * r2 - 2.0 * c1 * dot(d, g.d1)) / (r2 * r2);
      const auto rho = m.profile.eval(alpha);
      return {m.center + d * rho.f, d * (rho.df * a1) + g.d1 * rho.f,
              d * (rho.d2f * a1 * a1 + rho.df * a2) + g.d1 * (2.0 * rho.df * a1) + g.d2 * rho.f};
    }
    CurvePoint operator()(const NodeDisplacementMap& m) const {
      const auto dx = m.dx.eval(t);
      const auto dy = m.dy.eval(t);
      return {g.p + Vec2{dx.f, dy.f}, g.d1 + Vec2{dx.df, dy.df}, g.d2 + Vec2{dx.d2f, dy.d2f}};
    }
  };
  return std::visit(Visitor{g, t}, map_);
}

const char* to_string(Violation v) noexcept {
  switch (v) {
    case Violation::kNone: return "none";
    case Violation::kContainment: return "containment";
    case Violation::kNodeSpeed: return "node-speed";
    case Violation::kSelfIntersection: return "self-intersection";
  }
  return "unknown";
}

AdmissibilityReport check_admissible(const DiffeoMap& diffeo, int n) {
  if (n < 16 || n % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "node count must be even and at least 16");
  }
  AdmissibilityReport report;
  std::vector<Vec2> pts(static_cast<std::size_t>(n));
  std::vector<double> speed(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const CurvePoint c = diffeo.at(kTwoPi * j / n);
    pts[j] = c.p;
    speed[j] = norm(c.d1);
  }
  report.containment_margin = std::numeric_limits<double>::infinity();
  report.min_speed = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const Vec2& p = pts[j];
    const double margin = std::min({p.x, 1.0 - p.x, p.y, 1.0 - p.y});
    report.containment_margin = std::min(report.containment_margin, std::isfinite(margin) ? margin : -1.0);
    report.min_speed = std::min(report.min_speed, std::isfinite(speed[j]) ? speed[j] : 0.0);
  }

  auto fail = [&](Violation v, int node, int other, const std::string& what) {
    report.admissible = false;
    report.violation = v;
    report.node = node;
    report.other_node = other;
    report.message = what;
    return report;
  };

  for (int j = 0; j < n; ++j) {
    const Vec2& p = pts[j];
    if (!(p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0)) {
      std::ostringstream msg;
      msg << "image node " << j << " at (" << p.x << ", " << p.y << ") is outside the open unit cell";
      return fail(Violation::kContainment, j, -1, msg.str());
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!(speed[j] > kMinNodeSpeed)) {
      std::ostringstream msg;
      msg << "node speed " << speed[j] << " at node " << j << " is below " << kMinNodeSpeed;
      return fail(Violation::kNodeSpeed, j, -1, msg.str());
    }
  }
  for (int i = 0; i < n; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      if (segments_cross(a, b, pts[j], pts[(j + 1) % n])) {
        std::ostringstream msg;
        msg << "image polyline segments " << i << " and " << j << " intersect";
        return fail(Violation::kSelfIntersection, i, j, msg.str());
      }
    }
  }
  return report;
}

BoundaryMap BoundaryMap::build(const PeriodicCell& cell, const DiffeoMap& diffeo, int n, BoundaryOptions options) {
  const AdmissibilityReport report = check_admissible(diffeo, n);
  if (!report.admissible) throw Error(ErrorCode::kInvalidGeometry, report.message);

  BoundaryMap map(cell, diffeo);
  const Vec2 q = cell.edges();
  const auto count = static_cast<std::size_t>(n);
  map.params_.resize(count);
  map.nodes_.resize(count);
  map.tangents_.resize(count);
  map.normals_.resize(count);
  map.speeds_.resize(count);
  map.weights_.resize(count);
  map.curvature_.resize(count);

  std::vector<Vec2> d1(count);
  std::vector<Vec2> d2(count);
  const double h = kTwoPi / n;
  double signed_area = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double t = h * static_cast<double>(j);
    const CurvePoint c = diffeo.at(t);
    map.params_[j] = t;
    map.nodes_[j] = hadamard(q, c.p);
    d1[j] = hadamard(q, c.d1);
    d2[j] = hadamard(q, c.d2);
    map.speeds_[j] = norm(d1[j]);
    map.weights_[j] = h * map.speeds_[j];
    signed_area += 0.5 * h * cross(map.nodes_[j], d1[j]);
  }
  map.orientation_ = signed_area > 0.0 ? 1 : -1;
  map.area_ = std::abs(signed_area);

  double perimeter = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double s = map.speeds_[j];
    const Vec2 tangent = d1[j] * (1.0 / s);
    map.tangents_[j] = tangent;
    // Tangent rotated by -90 degrees points out of a counterclockwise hole.
    Vec2 normal = map.orientation_ > 0 ? Vec2{tangent.y, -tangent.x} : Vec2{-tangent.y, tangent.x};
    if (options.flip_normals) normal = -normal;
    map.normals_[j] = normal;
    map.curvature_[j] = map.orientation_ * cross(d1[j], d2[j]) / (s * s * s);
    perimeter += map.weights_[j];
  }
  map.perimeter_ = perimeter;
  return map;
}

bool point_in_polygon(std::span<const Vec2> polygon, const Vec2& x) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[j];
    if ((a.y > x.y) != (b.y > x.y)) {
      const double cross_x = (b.x - a.x) * (x.y - a.y) / (b.y - a.y) + a.x;
      if (x.x < cross_x) inside = !inside;
    }
  }
  return inside;
}

bool BoundaryMap::in_hole(const Vec2& x) const {
  const Vec2 q = cell_.edges();
  const Vec2 folded{x.x - q.x * std::floor(x.x / q.x), x.y - q.y * std::floor(x.y / q.y)};
  return point_in_polygon(nodes_, folded);
}

double BoundaryMap::node_distance(const Vec2& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec2& node : nodes_) best = std::min(best, cell_.lattice_distance(x - node));
  return best;
}

}  // namespace perilap
