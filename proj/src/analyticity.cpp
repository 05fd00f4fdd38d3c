// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/analyticity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "json_io.hpp"

#include "perilap/error.hpp"

namespace perilap {

namespace {

constexpr double kPi = std::numbers::pi;
// Families must keep this fraction of the t = 0 admissibility margins.
constexpr double kMarginFraction = 0.2;

bool is_zero(const RadialProfile& p) {
  return std::all_of(p.a.begin(), p.a.end(), [](double v) { return v == 0.0; }) &&
         std::all_of(p.b.begin(), p.b.end(), [](double v) { return v == 0.0; });
}

std::vector<double> axpy(const std::vector<double>& base, double t, const std::vector<double>& delta) {
  std::vector<double> out(std::max(base.size(), delta.size()), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (i < base.size() ? base[i] : 0.0) + t * (i < delta.size() ? delta[i] : 0.0);
  }
  return out;
}

std::string format_t(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

[[noreturn]] void family_invalid(double t, const std::string& why) {
  throw Error(ErrorCode::kFamilyInvalid, "family invalid at t = " + format_t(t) + ": " + why);
}

}  // namespace

const char* to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::kFixed: return "fixed";
    case FamilyKind::kCellEdge: return "cell-edge";
    case FamilyKind::kShape: return "shape";
    case FamilyKind::kDatum: return "datum";
    case FamilyKind::kConstant: return "constant";
    case FamilyKind::kJoint: return "joint";
  }
  return "unknown";
}

const char* to_string(DecayVerdict v) noexcept {
  switch (v) {
    case DecayVerdict::kAnalyticConsistent: return "analytic-consistent";
    case DecayVerdict::kPolynomial: return "polynomial";
    case DecayVerdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

FamilyKind ParameterFamily::kind() const {
  const bool cell = dq.x != 0.0 || dq.y != 0.0;
  const bool shape = !is_zero(dshape);
  const bool datum = std::any_of(ddatum.begin(), ddatum.end(), [](double v) { return v != 0.0; });
  const bool constant = dk != 0.0;
  const int active = cell + shape + datum + constant;
  if (active == 0) return FamilyKind::kFixed;
  if (active > 1) return FamilyKind::kJoint;
  if (cell) return FamilyKind::kCellEdge;
  if (shape) return FamilyKind::kShape;
  if (datum) return FamilyKind::kDatum;
  return FamilyKind::kConstant;
}

NeumannProblem ParameterFamily::at(double t) const {
  NeumannProblem p = base;
  if (dq.x != 0.0 || dq.y != 0.0) {
    p.cell = PeriodicCell(base.cell.q11() + t * dq.x, base.cell.q22() + t * dq.y);
  }
  if (!is_zero(dshape)) {
    RadialMap radial;
    if (const auto* existing = std::get_if<RadialMap>(&base.diffeo.map())) {
      radial = *existing;
    } else if (std::holds_alternative<IdentityMap>(base.diffeo.map())) {
      radial.center = base.diffeo.curve().center();
    } else {
      throw Error(ErrorCode::kInvalidArgument, "shape families need a radial or identity boundary map");
    }
    radial.profile.a = axpy(radial.profile.a, t, dshape.a);
    radial.profile.b = axpy(radial.profile.b, t, dshape.b);
    p.diffeo = DiffeoMap(base.diffeo.curve(), std::move(radial));
  }
  if (!ddatum.empty()) {
    if (ddatum.size() != base.datum.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "datum perturbation size does not match the datum");
    }
    p.datum = axpy(base.datum, t, ddatum);
  }
  p.k = base.k + t * dk;
  return p;
}

std::vector<double> chebyshev_points(double t_min, double t_max, int degree) {
  if (degree < 1) throw Error(ErrorCode::kInvalidArgument, "Chebyshev degree must be positive");
  const double mid = 0.5 * (t_min + t_max);
  const double half = 0.5 * (t_max - t_min);
  std::vector<double> t(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i <= degree; ++i) t[i] = mid + half * std::cos(kPi * i / degree);
  return t;
}

FamilyCertificate certify_family(const ParameterFamily& family, std::span<const double> samples) {
  const int n = family.base.node_count;
  auto report_at = [&](double t) {
    try {
      return check_admissible(family.at(t).diffeo, n);
    } catch (const Error& e) {
      family_invalid(t, e.what());
    }
  };
  const double t_ref = std::clamp(0.0, family.t_min, family.t_max);
  const AdmissibilityReport ref = report_at(t_ref);
  if (!ref.admissible) family_invalid(t_ref, ref.message);

  FamilyCertificate cert;
  cert.min_containment_ratio = 1.0;
  cert.min_speed_ratio = 1.0;
  for (double t : samples) {
    const AdmissibilityReport r = report_at(t);
    if (!r.admissible) family_invalid(t, std::string(to_string(r.violation)) + ": " + r.message);
    cert.min_containment_ratio = std::min(cert.min_containment_ratio, r.containment_margin / ref.containment_margin);
    cert.min_speed_ratio = std::min(cert.min_speed_ratio, r.min_speed / ref.min_speed);
  }
  cert.certified = cert.min_containment_ratio >= kMarginFraction && cert.min_speed_ratio >= kMarginFraction;
  return cert;
}

std::vector<std::vector<double>> sample_traces(const ParameterFamily& family, std::span<const Vec2> probes,
                                               int degree) {
  if (degree < 4) throw Error(ErrorCode::kInvalidArgument, "trace degree must be at least 4");
  const std::vector<double> samples = chebyshev_points(family.t_min, family.t_max, degree);
  certify_family(family, samples);
  std::vector<std::vector<double>> traces(probes.size(), std::vector<double>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Solution sol = solve(family.at(samples[i]));
    for (std::size_t p = 0; p < probes.size(); ++p) {
      if (sol.boundary().in_hole(probes[p])) family_invalid(samples[i], "probe lies inside a hole");
      const FieldValue v = sol.eval(probes[p]);
      if (v.near_boundary) family_invalid(samples[i], "probe is too close to the boundary");
      traces[p][i] = v.value;
    }
  }
  return traces;
}

std::vector<double> sample_trace(const ParameterFamily& family, const Vec2& probe, int degree) {
  return sample_traces(family, std::span<const Vec2>(&probe, 1), degree).front();
}

std::vector<double> chebyshev_coefficients(std::span<const double> trace) {
  if (trace.size() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two trace values");
  const int d = static_cast<int>(trace.size()) - 1;
  std::vector<double> c(trace.size());
  for (int j = 0; j <= d; ++j) {
    double sum = 0.0;
    for (int i = 0; i <= d; ++i) {
      const double end_weight = (i == 0 || i == d) ? 0.5 : 1.0;
      // cos(pi i j / d) with the argument reduced exactly.
      sum += end_weight * trace[i] * std::cos(kPi * static_cast<double>((i * j) % (2 * d)) / d);
    }
    c[j] = 2.0 * sum / d;
  }
  c[0] *= 0.5;
  c[d] *= 0.5;
  return c;
}

double chebyshev_derivative(std::span<const double> coeffs, double s) {
  // d/ds T_j = j U_{j-1}
  double u_prev = 0.0;
  double u = 1.0;
  double sum = 0.0;
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    sum += coeffs[j] * static_cast<double>(j) * u;
    const double next = 2.0 * s * u - u_prev;
    u_prev = u;
    u = next;
  }
  return sum;
}

DecayReport fit_decay(std::span<const double> coeffs) {
  if (coeffs.size() < 6) {
    throw Error(ErrorCode::kInsufficientData, "decay fit needs at least 6 coefficients");
  }
  DecayReport report;
  report.degree = static_cast<int>(coeffs.size()) - 1;
  report.magnitudes.resize(coeffs.size());
  std::transform(coeffs.begin(), coeffs.end(), report.magnitudes.begin(), [](double c) { return std::abs(c); });
  const double peak = *std::max_element(report.magnitudes.begin(), report.magnitudes.end());
  const double floor = kNoiseFloor * peak;

  int last = -1;
  for (int j = 0; j <= report.degree; ++j) {
    if (report.magnitudes[j] > floor) last = j;
  }
  if (last + 1 < 6) {
    // Everything past a low degree sits at the noise floor.
    report.verdict = DecayVerdict::kPolynomial;
    report.polynomial_degree = std::max(last, 0);
    return report;
  }

  // Fit the running tail maximum max_{i >= j} |c_i|: a geometric bound
  // |c_j| <= C rho^{-j} constrains this envelope, and it is insensitive to
  // isolated dips from complex-conjugate singularity pairs and to the size of
  // the affine part carried by c_0 and c_1.
  std::vector<double> envelope(static_cast<std::size_t>(last) + 1);
  double running = 0.0;
  for (int j = last; j >= 0; --j) {
    running = std::max(running, report.magnitudes[j]);
    envelope[j] = running;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  int count = 0;
  for (int j = 0; j <= last; ++j) {
    if (report.magnitudes[j] <= floor) continue;
    const double x = j;
    const double y = std::log(envelope[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++count;
  }
  report.fitted_terms = count;
  const double cxx = sxx - sx * sx / count;
  const double cxy = sxy - sx * sy / count;
  const double cyy = syy - sy * sy / count;
  const double slope = cxy / cxx;
  report.rate = std::exp(-slope);
  report.fit_quality = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
  report.verdict = (report.rate > kMinDecayRate && report.fit_quality >= kMinFitQuality)
                       ? DecayVerdict::kAnalyticConsistent
                       : DecayVerdict::kInconclusive;
  return report;
}

DerivativeCheck fd_derivative_check(const ParameterFamily& family, const Vec2& probe, double t0, int degree) {
  if (!(t0 > family.t_min && t0 < family.t_max)) {
    throw Error(ErrorCode::kInvalidArgument, "t0 must be interior to the family interval");
  }
  DerivativeCheck check;
  check.probe = probe;
  check.t0 = t0;
  const std::vector<double> trace = sample_trace(family, probe, degree);
  const std::vector<double> coeffs = chebyshev_coefficients(trace);
  const double half = 0.5 * (family.t_max - family.t_min);
  const double s0 = (t0 - 0.5 * (family.t_min + family.t_max)) / half;
  check.interpolant_derivative = chebyshev_derivative(coeffs, s0) / half;

  auto value_at = [&](double t) {
    const Solution sol = solve(family.at(t));
    return sol.eval(probe).value;
  };
  auto central = [&](double h) {
    const std::vector<double> pair{t0 - h, t0 + h};
    certify_family(family, pair);
    return (value_at(t0 + h) - value_at(t0 - h)) / (2.0 * h);
  };
  check.steps = {1e-3, 1e-4};
  const double scale = std::max(std::abs(check.interpolant_derivative), 1e-300);
  for (double h : check.steps) {
    const double fd = central(h);
    check.fd_derivatives.push_back(fd);
    check.relative_errors.push_back(std::abs(fd - check.interpolant_derivative) / scale);
  }
  const double e1 = check.relative_errors[1];
  // Order from successive differences at h, h/2, h/4, independent of the
  // interpolant; the 1e-4 step is already near the rounding level of the solve.
  const double h = check.steps[0];
  check.order_steps = {h, h / 2, h / 4};
  check.order_derivatives = {check.fd_derivatives[0], central(h / 2), central(h / 4)};
  const double d0 = std::abs(check.order_derivatives[0] - check.order_derivatives[1]);
  const double d1 = std::abs(check.order_derivatives[1] - check.order_derivatives[2]);
  check.observed_order = (d0 > 0.0 && d1 > 0.0) ? std::log2(d0 / d1) : 0.0;
  check.agrees = e1 <= kDerivativeTolerance;
  return check;
}

std::string to_json(std::span<const DecayReport> reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const DecayReport& r : reports) {
    nlohmann::ordered_json item;
    item["probe"] = {r.probe.x, r.probe.y};
    item["degree"] = r.degree;
    item["coefficients"] = r.magnitudes;
    item["rate"] = r.rate;
    item["fit_quality"] = r.fit_quality;
    item["fitted_terms"] = r.fitted_terms;
    item["polynomial_degree"] = r.polynomial_degree;
    item["verdict"] = to_string(r.verdict);
    doc.push_back(std::move(item));
  }
  return detail::dump17(doc);
}

std::string to_csv(std::span<const DecayReport> reports) {
  std::ostringstream out;
  out << "probe,probe_x,probe_y,j,abs_c\n";
  char buf[160];
  for (std::size_t p = 0; p < reports.size(); ++p) {
    const DecayReport& r = reports[p];
    for (std::size_t j = 0; j < r.magnitudes.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%zu,%.17g\n", p, r.probe.x, r.probe.y, j, r.magnitudes[j]);
      out << buf;
    }
  }
  return out.str();
}

}  // namespace perilap
