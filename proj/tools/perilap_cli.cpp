// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0
//
// perilap: solve, sweep and verify driven by a JSON config.
//
// Exit codes: 0 ok, 2 config or usage error, 3 runtime or admissibility
// failure, 4 verdict failure.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "perilap/perilap.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitVerdict = 4;

struct Options {
  std::string config;
  std::string out = ".";
  int threads = 0;
  std::uint64_t seed = 1;
};

class Failure : public std::runtime_error {
 public:
  Failure(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

struct StringDeleter {
  void operator()(char* s) const { plp_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

void check(plp_status s) {
  if (s == PLP_OK) return;
  throw Failure(s == PLP_CONFIG ? kExitConfig : kExitRuntime, plp_last_error());
}

std::string read_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(kExitConfig, "cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary file in the same directory, then renames.
void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure(kExitRuntime, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Failure(kExitRuntime, "write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Failure(kExitRuntime, "cannot rename into '" + path.string() + "'");
  }
}

fs::path output_path(const Options& opt, const std::string& config, const char* which) {
  char* name = nullptr;
  check(plp_config_output_name(config.c_str(), which, &name));
  CString owned(name);
  return fs::path(opt.out) / owned.get();
}

int run_solve(const Options& opt) {
  const std::string config = read_config(opt.config);
  check(plp_config_validate(config.c_str()));
  plp_solution* raw = nullptr;
  check(plp_solve_config(config.c_str(), &raw));
  std::unique_ptr<plp_solution, void (*)(plp_solution*)> sol(raw, plp_solution_destroy);

  char* json = nullptr;
  check(plp_solution_to_json(sol.get(), &json));
  CString json_owned(json);
  const fs::path sol_path = output_path(opt, config, "solution");
  write_atomic(sol_path, json_owned.get());
  std::cout << "solution: " << sol_path.string() << "\n";

  char* csv = nullptr;
  check(plp_solution_grid_csv(sol.get(), &csv));
  CString csv_owned(csv);
  const std::string grid = csv_owned.get();
  if (grid.find('\n') + 1 < grid.size()) {
    const fs::path grid_path = output_path(opt, config, "grid");
    write_atomic(grid_path, grid);
    std::cout << "grid: " << grid_path.string() << "\n";
  }
  return kExitOk;
}

int run_sweep(const Options& opt) {
  const std::string config = read_config(opt.config);
  check(plp_config_validate(config.c_str()));
  char* json = nullptr;
  char* csv = nullptr;
  int passed = 0;
  check(plp_sweep_config(config.c_str(), &json, &csv, &passed));
  CString json_owned(json), csv_owned(csv);
  const fs::path report_path = output_path(opt, config, "reports");
  const fs::path coeff_path = output_path(opt, config, "coefficients");
  write_atomic(report_path, json_owned.get());
  write_atomic(coeff_path, csv_owned.get());
  std::cout << "reports: " << report_path.string() << "\ncoefficients: " << coeff_path.string() << "\n";
  if (!passed) {
    std::cout << "sweep: verdict thresholds not met\n";
    return kExitVerdict;
  }
  std::cout << "sweep: all verdicts pass\n";
  return kExitOk;
}

int run_verify(const Options& opt) {
  const std::string config = opt.config.empty() ? std::string("{}") : read_config(opt.config);
  check(plp_config_validate(config.c_str()));
  char* table = nullptr;
  char* json = nullptr;
  int passed = 0;
  check(plp_verify_config(config.c_str(), opt.seed, &table, &json, &passed));
  CString table_owned(table), json_owned(json);
  std::cout << table_owned.get();
  write_atomic(output_path(opt, config, "verify"), json_owned.get());
  return passed ? kExitOk : kExitVerdict;
}

void add_common(CLI::App* cmd, Options& opt, bool config_required) {
  auto* c = cmd->add_option("--config", opt.config, "JSON run configuration");
  if (config_required) c->required();
  cmd->add_option("--out", opt.out, "output directory")->capture_default_str();
  cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", opt.seed, "seed for randomized invariant point sets")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perilap: periodic Neumann problems for the Laplace equation"};
  app.require_subcommand(1);
  Options opt;
  auto* solve = app.add_subcommand("solve", "solve the configured problem");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep with Chebyshev decay verdicts");
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(solve, opt, true);
  add_common(sweep, opt, true);
  add_common(verify, opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (plp_set_threads(opt.threads) != PLP_OK) throw Failure(kExitConfig, plp_last_error());
    if (solve->parsed()) return run_solve(opt);
    if (sweep->parsed()) return run_sweep(opt);
    return run_verify(opt);
  } catch (const Failure& f) {
    std::cerr << "perilap: error: " << f.what() << "\n";
    return f.code();
  } catch (const std::exception& e) {
    std::cerr << "perilap: error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
