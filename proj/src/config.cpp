// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>
#include <string_view>

#include <json.hpp>

#include "perilap/error.hpp"

namespace perilap {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kConfig, "config field '" + path + "': " + what);
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string list;
      for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      fail(join(path, key), "unknown key (allowed here: " + list + ")");
    }
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) fail(path, "must be positive");
  return v;
}

int integer(const json& j, const std::string& path, int lo, int hi) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi) fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  auto s = j.get<std::string>();
  if (s.empty()) fail(path, "must not be empty");
  return s;
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], index(path, i)));
  return out;
}

Vec2 point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a pair [x, y]");
  return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
}

RadialProfile profile(const json& j, const std::string& path) {
  expect_object(j, path, {"a", "b"});
  RadialProfile p;
  if (j.contains("a")) p.a = numbers(j["a"], join(path, "a"));
  if (j.contains("b")) p.b = numbers(j["b"], join(path, "b"));
  return p;
}

const json& required(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(join(path, key), "is required");
  return j[key];
}

DatumTerm datum_term(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a datum term object");
  const std::string kind = string(required(j, path, "kind"), join(path, "kind"));
  DatumTerm term;
  if (kind == "constant") {
    expect_object(j, path, {"kind", "value"});
    term.kind = DatumTerm::Kind::kConstant;
    term.amplitude = number(required(j, path, "value"), join(path, "value"));
  } else if (kind == "cos" || kind == "sin") {
    expect_object(j, path, {"kind", "m", "amplitude"});
    term.kind = kind == "cos" ? DatumTerm::Kind::kCos : DatumTerm::Kind::kSin;
    term.mode = integer(required(j, path, "m"), join(path, "m"), 0, 4096);
    if (j.contains("amplitude")) term.amplitude = number(j["amplitude"], join(path, "amplitude"));
  } else if (kind == "nodes") {
    expect_object(j, path, {"kind", "values"});
    term.kind = DatumTerm::Kind::kNodes;
    term.values = numbers(required(j, path, "values"), join(path, "values"));
    if (term.values.size() < 4) fail(join(path, "values"), "needs at least 4 node values");
  } else {
    fail(join(path, "kind"), "unknown datum kind '" + kind + "' (constant, cos, sin, nodes)");
  }
  return term;
}

DatumSpec datum(const json& j, const std::string& path) {
  DatumSpec spec;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) spec.terms.push_back(datum_term(j[i], index(path, i)));
  } else {
    spec.terms.push_back(datum_term(j, path));
  }
  return spec;
}

MapKind boundary_map(const json& j, const std::string& path) {
  const std::string kind = string(required(j, path, "kind"), join(path, "kind"));
  if (kind == "identity") {
    expect_object(j, path, {"kind"});
    return IdentityMap{};
  }
  if (kind == "affine") {
    expect_object(j, path, {"kind", "matrix", "offset"});
    AffineMap m;
    if (j.contains("matrix")) {
      const auto& a = j["matrix"];
      const std::string mp = join(path, "matrix");
      if (!a.is_array() || a.size() != 2) fail(mp, "expected [[a11, a12], [a21, a22]]");
      const Vec2 r0 = point(a[0], index(mp, 0));
      const Vec2 r1 = point(a[1], index(mp, 1));
      m.a11 = r0.x;
      m.a12 = r0.y;
      m.a21 = r1.x;
      m.a22 = r1.y;
    }
    if (j.contains("offset")) m.offset = point(j["offset"], join(path, "offset"));
    return m;
  }
  if (kind == "radial") {
    expect_object(j, path, {"kind", "center", "coefficients"});
    RadialMap m;
    m.center = point(required(j, path, "center"), join(path, "center"));
    if (j.contains("coefficients")) m.profile = profile(j["coefficients"], join(path, "coefficients"));
    return m;
  }
  fail(join(path, "kind"), "unknown map kind '" + kind + "' (identity, affine, radial)");
}

void geometry(const json& j, RunConfig& cfg) {
  const std::string path = "geometry";
  expect_object(j, path, {"curve", "center", "radius", "axes", "coefficients", "N", "map"});
  const std::string curve = string(required(j, path, "curve"), join(path, "curve"));
  const Vec2 center = j.contains("center") ? point(j["center"], join(path, "center")) : Vec2{0.5, 0.5};
  auto only = [&](std::initializer_list<const char*> keys, const char* for_curve) {
    for (const char* key : keys) {
      if (j.contains(key)) fail(join(path, key), std::string("is not used by curve '") + for_curve + "'");
    }
  };
  std::optional<ReferenceCurve> ref;
  if (curve == "circle") {
    only({"axes", "coefficients"}, "circle");
    ref = ReferenceCurve::circle(center, positive(required(j, path, "radius"), join(path, "radius")));
  } else if (curve == "ellipse") {
    only({"radius", "coefficients"}, "ellipse");
    const Vec2 axes = point(required(j, path, "axes"), join(path, "axes"));
    if (!(axes.x > 0.0 && axes.y > 0.0)) fail(join(path, "axes"), "semi-axes must be positive");
    ref = ReferenceCurve::ellipse(center, axes.x, axes.y);
  } else if (curve == "radial") {
    only({"axes"}, "radial");
    const double r = positive(required(j, path, "radius"), join(path, "radius"));
    const RadialProfile p =
        j.contains("coefficients") ? profile(j["coefficients"], join(path, "coefficients")) : RadialProfile{};
    ref = ReferenceCurve::radial(center, r, p);
  } else {
    fail(join(path, "curve"), "unknown curve '" + curve + "' (circle, ellipse, radial)");
  }
  MapKind map = IdentityMap{};
  if (j.contains("map")) map = boundary_map(j["map"], join(path, "map"));
  cfg.diffeo.emplace(*ref, std::move(map));
  if (j.contains("N")) {
    cfg.node_count = integer(j["N"], join(path, "N"), 16, 4096);
    if (cfg.node_count % 2 != 0) fail(join(path, "N"), "must be even");
  }
}

void cell(const json& j, RunConfig& cfg) {
  const std::string path = "cell";
  if (j.is_array()) {
    const Vec2 q = point(j, path);
    cfg.q11 = q.x;
    cfg.q22 = q.y;
  } else {
    expect_object(j, path, {"edges", "ewald_xi"});
    const Vec2 q = point(required(j, path, "edges"), join(path, "edges"));
    cfg.q11 = q.x;
    cfg.q22 = q.y;
    if (j.contains("ewald_xi")) cfg.ewald_xi = positive(j["ewald_xi"], join(path, "ewald_xi"));
  }
  try {
    (void)cfg.cell();
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

void grid_axis(const json& j, const std::string& path, double& lo, double& hi, int& n) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected [min, max, count]");
  lo = number(j[0], index(path, 0));
  hi = number(j[1], index(path, 1));
  n = integer(j[2], index(path, 2), 1, 100000);
  if (n > 1 && !(hi > lo)) fail(path, "max must exceed min");
}

void solve_block(const json& j, RunConfig& cfg) {
  expect_object(j, "solve", {"grid"});
  if (j.contains("grid")) {
    const json& g = j["grid"];
    expect_object(g, "solve.grid", {"x", "y"});
    grid_axis(required(g, "solve.grid", "x"), "solve.grid.x", cfg.grid.x_min, cfg.grid.x_max, cfg.grid.nx);
    grid_axis(required(g, "solve.grid", "y"), "solve.grid.y", cfg.grid.y_min, cfg.grid.y_max, cfg.grid.ny);
  }
}

void sweep_block(const json& j, RunConfig& cfg) {
  const std::string path = "sweep";
  expect_object(j, path, {"family", "probes", "degree", "fd_check"});
  SweepSpec& s = cfg.sweep;
  s.present = true;
  const json& f = required(j, path, "family");
  const std::string fp = join(path, "family");
  expect_object(f, fp, {"dq", "dshape", "ddatum", "dk", "interval"});
  if (f.contains("dq")) s.family.dq = point(f["dq"], join(fp, "dq"));
  if (f.contains("dshape")) s.family.dshape = profile(f["dshape"], join(fp, "dshape"));
  if (f.contains("ddatum")) s.family.ddatum = datum(f["ddatum"], join(fp, "ddatum"));
  if (f.contains("dk")) s.family.dk = number(f["dk"], join(fp, "dk"));
  if (f.contains("interval")) {
    const Vec2 iv = point(f["interval"], join(fp, "interval"));
    if (!(iv.y > iv.x)) fail(join(fp, "interval"), "t_max must exceed t_min");
    s.family.t_min = iv.x;
    s.family.t_max = iv.y;
  }
  const json& probes = required(j, path, "probes");
  if (!probes.is_array() || probes.empty()) fail(join(path, "probes"), "expected a non-empty array of points");
  for (std::size_t i = 0; i < probes.size(); ++i) s.probes.push_back(point(probes[i], index(join(path, "probes"), i)));
  if (j.contains("degree")) s.degree = integer(j["degree"], join(path, "degree"), 5, 256);
  if (j.contains("fd_check")) {
    const json& fd = j["fd_check"];
    const std::string fdp = join(path, "fd_check");
    if (fd.is_boolean()) {
      if (fd.get<bool>()) s.fd_t0 = 0.5 * (s.family.t_min + s.family.t_max);
    } else {
      expect_object(fd, fdp, {"t0"});
      const double t0 = number(required(fd, fdp, "t0"), join(fdp, "t0"));
      if (!(t0 > s.family.t_min && t0 < s.family.t_max)) fail(join(fdp, "t0"), "must be interior to the interval");
      s.fd_t0 = t0;
    }
  }
}

void verify_block(const json& j, RunConfig& cfg) {
  expect_object(j, "verify", {"flip_normals", "random_points", "N"});
  if (j.contains("flip_normals")) cfg.verify.flip_normals = boolean(j["flip_normals"], "verify.flip_normals");
  if (j.contains("random_points")) cfg.verify.random_points = integer(j["random_points"], "verify.random_points", 1, 100000);
  if (j.contains("N")) {
    cfg.verify.node_count = integer(j["N"], "verify.N", 32, 4096);
    if (cfg.verify.node_count % 2 != 0) fail("verify.N", "must be even");
  }
}

void output_block(const json& j, RunConfig& cfg) {
  expect_object(j, "output", {"solution", "grid", "reports", "coefficients", "verify"});
  auto set = [&](const char* key, std::string& field) {
    if (j.contains(key)) field = string(j[key], join("output", key));
  };
  set("solution", cfg.output.solution);
  set("grid", cfg.output.grid);
  set("reports", cfg.output.reports);
  set("coefficients", cfg.output.coefficients);
  set("verify", cfg.output.verify);
}

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

std::vector<double> DatumSpec::sample(int n) const {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (const DatumTerm& term : terms) {
    std::vector<double> nodes;
    if (term.kind == DatumTerm::Kind::kNodes) {
      nodes = static_cast<int>(term.values.size()) == n ? term.values : TrigInterpolant(term.values).resample(n);
    }
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * std::numbers::pi * j / n;
      switch (term.kind) {
        case DatumTerm::Kind::kConstant: out[j] += term.amplitude; break;
        case DatumTerm::Kind::kCos: out[j] += term.amplitude * std::cos(term.mode * t); break;
        case DatumTerm::Kind::kSin: out[j] += term.amplitude * std::sin(term.mode * t); break;
        case DatumTerm::Kind::kNodes: out[j] += nodes[j]; break;
      }
    }
  }
  return out;
}

PeriodicCell RunConfig::cell() const {
  return ewald_xi ? PeriodicCell(q11, q22, *ewald_xi) : PeriodicCell(q11, q22);
}

NeumannProblem RunConfig::problem() const {
  if (!diffeo) throw Error(ErrorCode::kConfig, "config field 'geometry': is required for this command");
  return NeumannProblem{cell(), *diffeo, datum.sample(node_count), k, node_count, {}};
}

ParameterFamily RunConfig::family() const {
  if (!sweep.present) throw Error(ErrorCode::kConfig, "config field 'sweep': is required for this command");
  std::vector<double> ddatum;
  if (!sweep.family.ddatum.empty()) ddatum = sweep.family.ddatum.sample(node_count);
  return ParameterFamily{problem(),          sweep.family.dq, sweep.family.dshape, std::move(ddatum),
                         sweep.family.dk,    sweep.family.t_min, sweep.family.t_max};
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, "config syntax error at " + position(text, e.byte) + ": " + e.what());
  }
  expect_object(doc, "", {"dimension", "cell", "geometry", "datum", "k", "solve", "sweep", "verify", "output"});
  if (doc.contains("dimension")) {
    const json& d = doc["dimension"];
    if (!d.is_number_integer() || d.get<long long>() != 2) {
      fail("dimension", "must be 2; only the two-dimensional periodic problem is in scope");
    }
  }
  RunConfig cfg;
  if (doc.contains("cell")) cell(doc["cell"], cfg);
  if (doc.contains("geometry")) geometry(doc["geometry"], cfg);
  if (doc.contains("datum")) cfg.datum = datum(doc["datum"], "datum");
  if (doc.contains("k")) cfg.k = number(doc["k"], "k");
  if (doc.contains("solve")) solve_block(doc["solve"], cfg);
  if (doc.contains("sweep")) sweep_block(doc["sweep"], cfg);
  if (doc.contains("verify")) verify_block(doc["verify"], cfg);
  if (doc.contains("output")) output_block(doc["output"], cfg);
  return cfg;
}

}  // namespace perilap
