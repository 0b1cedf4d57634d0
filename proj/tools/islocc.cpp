// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

// islocc: sweeps, Bell-violation maps, threshold search and self-checks for
// Werner states of spatially overlapping identical qubits.
//
// exit codes: 0 ok, 1 verification failure, 2 config error, 3 I/O / runtime

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "islocc/report.hpp"
#include "islocc/sweep.hpp"
#include "islocc/verify.hpp"

namespace {

using namespace islocc;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Flags {
  std::string config;
  std::vector<std::pair<std::string, std::optional<std::string>>> settings{
      {"statistics", {}}, {"theta", {}},       {"target", {}}, {"constraint", {}},   {"p_grid", {}},
      {"indist_grid", {}}, {"l_grid", {}},     {"lprime", {}}, {"output", {}},       {"format", {}},
      {"bell_formula", {}}};

  std::optional<std::string>& at(std::string_view key) {
    for (auto& [k, v] : settings)
      if (k == key) return v;
    throw std::logic_error("no flag " + std::string(key));
  }
};

void add_config_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "flat key = value config file");
  cmd->add_option("--statistics", f.at("statistics"), "boson|fermion");
  cmd->add_option("--theta", f.at("theta"), "phase of psi2 (default: the canonical phase for target and statistics)");
  cmd->add_option("--target", f.at("target"), "1_plus|1_minus");
  cmd->add_option("--constraint", f.at("constraint"), "l_eq_rprime|l_eq_lprime|free");
  cmd->add_option("--p-grid", f.at("p_grid"), "noise grid start:stop:steps");
  cmd->add_option("--indist-grid", f.at("indist_grid"), "I_LR grid start:stop:steps (l_eq_rprime)");
  cmd->add_option("--l-grid", f.at("l_grid"), "l grid start:stop:steps (l_eq_lprime, free)");
  cmd->add_option("--lprime", f.at("lprime"), "fixed l' for the free constraint");
  cmd->add_option("--output", f.at("output"), "output path (default stdout)");
  cmd->add_option("--format", f.at("format"), "csv|json|svg");
  cmd->add_option("--bell-formula", f.at("bell_formula"), "horodecki|pq");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open config file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SweepConfig build_config(Flags& f) {
  SweepConfig cfg;
  if (!f.config.empty()) cfg = parse_sweep_config(read_file(f.config));
  for (const auto& [k, v] : f.settings)
    if (v) apply_setting(cfg, k, *v);
  cfg.validate();
  return cfg;
}

template <class Write>
void emit(const SweepConfig& cfg, Write&& write) {
  if (cfg.output.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw Error(ErrorCode::io, "cannot open output file '" + cfg.output + "'");
  write(out);
  out.flush();
  if (!out) throw Error(ErrorCode::io, "write to '" + cfg.output + "' failed");
}

int cmd_sweep(Flags& f) {
  const auto cfg = build_config(f);
  const auto rows = run_sweep(cfg);
  emit(cfg, [&](std::ostream& os) {
    switch (cfg.format) {
      case OutputFormat::csv: write_sweep_csv(os, rows); break;
      case OutputFormat::json: os << sweep_to_json(rows).dump(2) << '\n'; break;
      case OutputFormat::svg: write_sweep_svg(os, rows, cfg.p_grid.steps); break;
    }
  });
  return kExitOk;
}

int cmd_bell_region(Flags& f) {
  const auto cfg = build_config(f);
  const auto rows = run_bell_region(cfg);
  emit(cfg, [&](std::ostream& os) {
    switch (cfg.format) {
      case OutputFormat::csv: write_bell_region_csv(os, rows); break;
      case OutputFormat::json: os << bell_region_to_json(rows).dump(2) << '\n'; break;
      case OutputFormat::svg: write_bell_region_svg(os, rows, cfg.p_grid.steps, cfg.outer_grid.steps); break;
    }
  });
  return kExitOk;
}

int cmd_threshold(Flags& f) {
  const auto cfg = build_config(f);
  const auto t = run_threshold(cfg);
  emit(cfg, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json)
      os << threshold_to_json(t).dump(2) << '\n';
    else
      write_threshold_text(os, t);
  });
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opt) {
  bool ok = true;
  for (const auto& s : run_verification(opt)) {
    std::printf("[%s] %-28s cases=%zu failures=%zu max_err=%.3g tol=%.0e\n", s.passed() ? "PASS" : "FAIL",
                s.name.c_str(), s.cases, s.failures, s.max_error, s.tolerance);
    ok = ok && s.passed();
  }
  std::printf("%s\n", ok ? "verify: all suites passed" : "verify: FAILED");
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"islocc - noise-robust entanglement of identical qubits via spatial indistinguishability"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "islocc 0.1.0");

  Flags sweep_flags, region_flags, threshold_flags;
  auto* sweep = app.add_subcommand("sweep", "concurrence, EoF, P_LR and Bell value on a (indist or l) x p grid");
  add_config_flags(sweep, sweep_flags);
  auto* region = app.add_subcommand("bell-region", "Bell value and violation flag on a (indist or l) x p grid");
  add_config_flags(region, region_flags);
  auto* threshold = app.add_subcommand("threshold", "smallest I_LR with CHSH violation at every noise level");
  add_config_flags(threshold, threshold_flags);

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "run the self-verification suites");
  verify->add_flag("--inject-fault", vopt.inject_fault, "perturb the closed-form oracles (must fail)");
  verify->add_option("--seed", vopt.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sweep) return cmd_sweep(sweep_flags);
    if (*region) return cmd_bell_region(region_flags);
    if (*threshold) return cmd_threshold(threshold_flags);
    if (*verify) return cmd_verify(vopt);
  } catch (const Error& e) {
    std::fprintf(stderr, "islocc: %s error: %s\n", to_string(e.code()), e.what());
    return e.code() == ErrorCode::config ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "islocc: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
