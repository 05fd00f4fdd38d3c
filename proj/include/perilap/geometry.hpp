// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "perilap/cell_greens.hpp"
#include "perilap/vec2.hpp"

namespace perilap {

// Point on a parameterized curve with its first two parameter derivatives.
struct CurvePoint {
  Vec2 p;
  Vec2 d1;
  Vec2 d2;
};

// Real trigonometric interpolant through M equispaced samples on [0, 2 pi).
class TrigInterpolant {
 public:
  struct Value {
    double f = 0.0;
    double df = 0.0;
    double d2f = 0.0;
  };

  TrigInterpolant() = default;
  explicit TrigInterpolant(std::span<const double> samples);

  std::size_t size() const noexcept { return samples_; }
  Value eval(double t) const;
  double operator()(double t) const { return eval(t).f; }

  // Values at n equispaced nodes 2 pi j / n.
  std::vector<double> resample(int n) const;

 private:
  std::size_t samples_ = 0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// rho(alpha) = 1 + sum_{m >= 0} a_m cos(m alpha) + b_m sin(m alpha).
struct RadialProfile {
  std::vector<double> a;
  std::vector<double> b;

  // (rho, rho', rho'') at alpha.
  TrigInterpolant::Value eval(double alpha) const;
};

// Counterclockwise, 2 pi-periodic parameterization of the reference boundary.
class ReferenceCurve {
 public:
  enum class Kind { kCircle, kEllipse, kRadial };

  static ReferenceCurve circle(Vec2 center, double radius);
  static ReferenceCurve ellipse(Vec2 center, double semi_x, double semi_y);
  // center + radius * rho(t) (cos t, sin t).
  static ReferenceCurve radial(Vec2 center, double radius, RadialProfile profile);

  Kind kind() const noexcept { return kind_; }
  Vec2 center() const noexcept { return center_; }
  double radius() const noexcept { return axes_.x; }
  Vec2 axes() const noexcept { return axes_; }
  const RadialProfile& profile() const noexcept { return profile_; }

  CurvePoint at(double t) const;

 private:
  Kind kind_ = Kind::kCircle;
  Vec2 center_;
  Vec2 axes_;
  RadialProfile profile_;
};

struct IdentityMap {};

// p -> A p + b
struct AffineMap {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
  Vec2 offset;
};

// p -> c + rho(angle(p - c)) (p - c)
struct RadialMap {
  Vec2 center;
  RadialProfile profile;
};

// gamma(t) -> gamma(t) + D(t), D trigonometrically interpolated from
// displacements given at equispaced parameter nodes.
struct NodeDisplacementMap {
  TrigInterpolant dx;
  TrigInterpolant dy;

  static NodeDisplacementMap from_nodes(std::span<const Vec2> displacements);
};

using MapKind = std::variant<IdentityMap, AffineMap, RadialMap, NodeDisplacementMap>;

// The boundary map phi restricted to the reference curve, evaluated through
// the composite t -> phi(gamma(t)). Images are expressed in unit-cell
// coordinates; the cell matrix q is applied by BoundaryMap.
class DiffeoMap {
 public:
  explicit DiffeoMap(ReferenceCurve curve, MapKind map = IdentityMap{});

  const ReferenceCurve& curve() const noexcept { return curve_; }
  const MapKind& map() const noexcept { return map_; }
  std::string tag() const;

  CurvePoint at(double t) const;

 private:
  ReferenceCurve curve_;
  MapKind map_;
};

enum class Violation { kNone, kContainment, kNodeSpeed, kSelfIntersection };

const char* to_string(Violation v) noexcept;

struct AdmissibilityReport {
  bool admissible = true;
  Violation violation = Violation::kNone;
  int node = -1;        // first offending node (segment start for intersections)
  int other_node = -1;  // second segment for intersections
  std::string message;
  // Smallest distance of an image node to the boundary of the unit cell,
  // negative when a node lies outside.
  double containment_margin = 0.0;
  double min_speed = 0.0;
};

// Discrete check that phi o gamma is an admissible boundary map at N nodes:
// image strictly inside (0,1)^2, nonvanishing node speed, no polyline
// self-intersection. N must be even and at least 16.
AdmissibilityReport check_admissible(const DiffeoMap& diffeo, int n);

struct BoundaryOptions {
  // Reverses every normal. Only used to check that verification catches it.
  bool flip_normals = false;
};

// Nodes, speeds, normals and quadrature weights of the physical hole
// boundary q phi(gamma(t_j)), t_j = 2 pi j / N.
class BoundaryMap {
 public:
  static BoundaryMap build(const PeriodicCell& cell, const DiffeoMap& diffeo, int n,
                           BoundaryOptions options = {});

  const PeriodicCell& cell() const noexcept { return cell_; }
  const DiffeoMap& diffeo() const noexcept { return diffeo_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }

  std::span<const double> params() const noexcept { return params_; }
  std::span<const Vec2> nodes() const noexcept { return nodes_; }
  std::span<const Vec2> tangents() const noexcept { return tangents_; }
  std::span<const Vec2> normals() const noexcept { return normals_; }
  std::span<const double> speeds() const noexcept { return speeds_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> curvature() const noexcept { return curvature_; }

  double perimeter() const noexcept { return perimeter_; }
  // Area enclosed by the hole, by the trapezoid rule on (x y' - y x') / 2.
  double enclosed_area() const noexcept { return area_; }
  // +1 for a counterclockwise image, -1 for clockwise.
  int orientation() const noexcept { return orientation_; }
  double node_spacing() const noexcept { return perimeter_ / static_cast<double>(nodes_.size()); }

  // True when x lies inside some lattice copy of the hole polygon.
  bool in_hole(const Vec2& x) const;
  // Periodic distance from x to the nearest boundary node.
  double node_distance(const Vec2& x) const;

 private:
  BoundaryMap(PeriodicCell cell, DiffeoMap diffeo) : cell_(std::move(cell)), diffeo_(std::move(diffeo)) {}

  PeriodicCell cell_;
  DiffeoMap diffeo_;
  std::vector<double> params_;
  std::vector<Vec2> nodes_;
  std::vector<Vec2> tangents_;
  std::vector<Vec2> normals_;
  std::vector<double> speeds_;
  std::vector<double> weights_;
  std::vector<double> curvature_;
  double perimeter_ = 0.0;
  double area_ = 0.0;
  int orientation_ = 1;
};

// Crossing-number point-in-polygon test.
bool point_in_polygon(std::span<const Vec2> polygon, const Vec2& x);

}  // namespace perilap
