// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "perilap/perilap.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "perilap/config.hpp"
#include "perilap/error.hpp"
#include "perilap/parallel.hpp"
#include "perilap/verify.hpp"
#include "perilap/workflows.hpp"

struct plp_cell {
  perilap::PeriodicCell cell;
};

struct plp_solution {
  perilap::Solution solution;
  perilap::GridSpec grid;
};

namespace {

thread_local std::string g_last_error;

plp_status status_of(perilap::ErrorCode code) {
  const int v = static_cast<int>(code);
  return (v >= 1 && v <= 12) ? static_cast<plp_status>(v) : PLP_INTERNAL;
}

template <class F>
plp_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return PLP_OK;
  } catch (const perilap::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PLP_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PLP_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw perilap::Error(perilap::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

perilap::RunConfig parse(const char* text) {
  require(text, "config");
  return perilap::parse_config(text);
}

}  // namespace

extern "C" {

const char* plp_version(void) { return "0.1.0"; }

const char* plp_last_error(void) { return g_last_error.c_str(); }

const char* plp_status_name(plp_status status) {
  switch (status) {
    case PLP_OK: return "ok";
    case PLP_INTERNAL: return "internal error";
    default: return perilap::to_string(static_cast<perilap::ErrorCode>(status));
  }
}

plp_status plp_set_threads(int n) {
  return guard([&] {
    if (n < 0) throw perilap::Error(perilap::ErrorCode::kInvalidArgument, "thread count must be non-negative");
    perilap::set_thread_count(n);
  });
}

plp_status plp_cell_create(double q11, double q22, plp_cell** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    *out = new plp_cell{perilap::PeriodicCell(q11, q22)};
  });
}

void plp_cell_destroy(plp_cell* cell) { delete cell; }

plp_status plp_cell_greens(const plp_cell* cell, double x, double y, double* value) {
  return guard([&] {
    require(cell, "cell");
    require(value, "value");
    *value = cell->cell.greens({x, y});
  });
}

plp_status plp_cell_greens_grad(const plp_cell* cell, double x, double y, double* gx, double* gy) {
  return guard([&] {
    require(cell, "cell");
    require(gx, "gx");
    require(gy, "gy");
    const perilap::Vec2 g = cell->cell.greens_grad({x, y});
    *gx = g.x;
    *gy = g.y;
  });
}

plp_status plp_config_validate(const char* config_json) {
  return guard([&] { (void)parse(config_json); });
}

plp_status plp_config_output_name(const char* config_json, const char* which, char** out) {
  return guard([&] {
    require(which, "which");
    require(out, "out");
    const perilap::OutputSpec o = parse(config_json).output;
    const std::string key = which;
    const std::string* name = key == "solution"       ? &o.solution
                              : key == "grid"         ? &o.grid
                              : key == "reports"      ? &o.reports
                              : key == "coefficients" ? &o.coefficients
                              : key == "verify"       ? &o.verify
                                                      : nullptr;
    if (name == nullptr) throw perilap::Error(perilap::ErrorCode::kInvalidArgument, "unknown output '" + key + "'");
    *out = copy_string(*name);
  });
}

plp_status plp_solve_config(const char* config_json, plp_solution** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    const perilap::RunConfig cfg = parse(config_json);
    *out = new plp_solution{perilap::solve(cfg.problem()), cfg.grid};
  });
}

void plp_solution_destroy(plp_solution* sol) { delete sol; }

plp_status plp_solution_eval(const plp_solution* sol, double x, double y, double* u, double* ux, double* uy,
                             int* flags) {
  return guard([&] {
    require(sol, "solution");
    const perilap::Vec2 p{x, y};
    int f = 0;
    if (sol->solution.boundary().in_hole(p)) {
      f |= PLP_EVAL_IN_HOLE;
    } else {
      const auto value = sol->solution.eval(p);
      const auto grad = sol->solution.eval_grad(p);
      if (value.near_boundary) f |= PLP_EVAL_NEAR_BOUNDARY;
      if (u) *u = value.value;
      if (ux) *ux = grad.grad.x;
      if (uy) *uy = grad.grad.y;
    }
    if (flags) *flags = f;
  });
}

plp_status plp_solution_constant(const plp_solution* sol, double* constant) {
  return guard([&] {
    require(sol, "solution");
    require(constant, "constant");
    *constant = sol->solution.constant();
  });
}

plp_status plp_solution_to_json(const plp_solution* sol, char** out) {
  return guard([&] {
    require(sol, "solution");
    require(out, "out");
    *out = copy_string(sol->solution.to_json());
  });
}

plp_status plp_solution_grid_csv(const plp_solution* sol, char** out) {
  return guard([&] {
    require(sol, "solution");
    require(out, "out");
    *out = copy_string(perilap::grid_csv(sol->solution, sol->grid));
  });
}

plp_status plp_sweep_config(const char* config_json, char** report_json, char** coefficients_csv, int* all_passed) {
  return guard([&] {
    require(report_json, "report_json");
    require(coefficients_csv, "coefficients_csv");
    require(all_passed, "all_passed");
    const perilap::SweepResult r = perilap::run_sweep(parse(config_json));
    char* json = copy_string(r.json);
    try {
      *coefficients_csv = copy_string(r.csv);
    } catch (...) {
      std::free(json);
      throw;
    }
    *report_json = json;
    *all_passed = r.all_passed ? 1 : 0;
  });
}

plp_status plp_verify_config(const char* config_json, uint64_t seed, char** table, char** report_json,
                             int* all_passed) {
  return guard([&] {
    require(table, "table");
    require(report_json, "report_json");
    require(all_passed, "all_passed");
    const perilap::RunConfig cfg = parse(config_json);
    const perilap::VerifyReport r = perilap::run_verify(cfg.cell(), cfg.verify, seed);
    char* t = copy_string(r.table());
    try {
      *report_json = copy_string(r.to_json());
    } catch (...) {
      std::free(t);
      throw;
    }
    *table = t;
    *all_passed = r.all_passed() ? 1 : 0;
  });
}

void plp_string_free(char* s) { std::free(s); }

}  // extern "C"
