// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perilap/solver.hpp"

namespace perilap {

enum class FamilyKind { kFixed, kCellEdge, kShape, kDatum, kConstant, kJoint };

const char* to_string(FamilyKind kind) noexcept;

// One-parameter family t -> (q(t), phi_t, g_t, k(t)), affine in t:
//   q(t)      = q(0) + t dq
//   a_m(t)    = a_m(0) + t da_m, b_m(t) = b_m(0) + t db_m   (radial map profile)
//   g_t       = g_0 + t dg
//   k(t)      = k_0 + t dk
// The node count and reference nodes are shared by every member.
struct ParameterFamily {
  NeumannProblem base;
  Vec2 dq;
  RadialProfile dshape;
  std::vector<double> ddatum;
  double dk = 0.0;
  double t_min = -1.0;
  double t_max = 1.0;

  FamilyKind kind() const;
  NeumannProblem at(double t) const;
};

// d+1 Chebyshev-Lobatto points of [t_min, t_max], t_i = mid + half cos(pi i / d).
std::vector<double> chebyshev_points(double t_min, double t_max, int degree);

struct FamilyCertificate {
  // Admissible at every sample and margins at least 20% of the t = 0 values.
  bool certified = false;
  double min_containment_ratio = 0.0;
  double min_speed_ratio = 0.0;
};

// Checks admissibility at every sample point; throws a family-invalid error
// naming the first failing t.
FamilyCertificate certify_family(const ParameterFamily& family, std::span<const double> samples);

// u at each probe, for each Chebyshev sample: result[probe][i].
std::vector<std::vector<double>> sample_traces(const ParameterFamily& family, std::span<const Vec2> probes,
                                               int degree);
std::vector<double> sample_trace(const ParameterFamily& family, const Vec2& probe, int degree);

// Chebyshev coefficients of the interpolant through values at
// chebyshev_points(..., trace.size() - 1), by the discrete cosine sum.
std::vector<double> chebyshev_coefficients(std::span<const double> trace);

// Derivative of sum_j c_j T_j(s) at s in [-1, 1].
double chebyshev_derivative(std::span<const double> coeffs, double s);

inline constexpr double kNoiseFloor = 1e-13;
inline constexpr double kMinDecayRate = 1.05;
inline constexpr double kMinFitQuality = 0.99;

enum class DecayVerdict { kAnalyticConsistent, kPolynomial, kInconclusive };

const char* to_string(DecayVerdict v) noexcept;

struct DecayReport {
  Vec2 probe;
  int degree = 0;
  std::vector<double> magnitudes;
  double rate = 0.0;     // rho = exp(-slope)
  double fit_quality = 0.0;  // r^2
  int fitted_terms = 0;
  int polynomial_degree = -1;  // set for the polynomial verdict
  DecayVerdict verdict = DecayVerdict::kInconclusive;

  bool passes() const noexcept { return verdict != DecayVerdict::kInconclusive; }
};

// Least-squares line through the log of the decreasing envelope
// max_{i >= j} |c_i|, over the indices whose coefficient is above the noise
// floor (kNoiseFloor * max |c_j|). Fewer than 6 above-floor terms yields the
// polynomial verdict.
DecayReport fit_decay(std::span<const double> coeffs);

struct DerivativeCheck {
  Vec2 probe;
  double t0 = 0.0;
  double interpolant_derivative = 0.0;
  std::vector<double> steps;
  std::vector<double> fd_derivatives;
  std::vector<double> relative_errors;
  std::vector<double> order_steps;
  std::vector<double> order_derivatives;
  double observed_order = 0.0;
  bool agrees = false;  // finest-step relative error within tolerance
};

inline constexpr double kDerivativeTolerance = 1e-5;

// Compares the derivative of the degree-d Chebyshev interpolant at t0 with
// central differences of fresh solves at t0 +- h, h in {1e-3, 1e-4}.
DerivativeCheck fd_derivative_check(const ParameterFamily& family, const Vec2& probe, double t0, int degree);

std::string to_json(std::span<const DecayReport> reports);
std::string to_csv(std::span<const DecayReport> reports);

}  // namespace perilap
