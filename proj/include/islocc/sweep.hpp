// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sweep.hpp
 * @brief Grid sweeps of the Werner pipeline over noise probability and
 *        spatial indistinguishability, Bell-violation maps, and the search
 *        for the indistinguishability above which CHSH is violated for
 *        every noise level.
 *
 * Rows are ordered by (outer grid, p grid). The outer grid is read according
 * to the constraint:
 *   l_eq_rprime  outer values are I_LR in [0, 1]; l is found by inverting
 *                I_LR(l, l' = sqrt(1 - l^2)) on l in [1/sqrt2, 1];
 *   l_eq_lprime  outer values are l, with l' = l (I_LR = 1 away from l in {0, 1});
 *   free         outer values are l, with l' fixed by `lprime`.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "islocc/entangle.hpp"
#include "islocc/indist.hpp"
#include "islocc/noise.hpp"
#include "islocc/slocc.hpp"

namespace islocc {

enum class Constraint { l_eq_rprime, l_eq_lprime, free };
enum class OutputFormat { csv, json, svg };
enum class BellFormula { horodecki, pq };

inline const char* to_string(Constraint c) noexcept {
  switch (c) {
    case Constraint::l_eq_rprime: return "l_eq_rprime";
    case Constraint::l_eq_lprime: return "l_eq_lprime";
    case Constraint::free: return "free";
  }
  return "?";
}

inline const char* to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::svg: return "svg";
  }
  return "?";
}

inline const char* to_string(BellFormula f) noexcept { return f == BellFormula::horodecki ? "horodecki" : "pq"; }

inline Constraint parse_constraint(std::string_view t) {
  if (t == "l_eq_rprime" || t == "l=r'") return Constraint::l_eq_rprime;
  if (t == "l_eq_lprime" || t == "l=l'") return Constraint::l_eq_lprime;
  if (t == "free") return Constraint::free;
  throw Error(ErrorCode::config, "unknown constraint '" + std::string(t) + "' (expected l_eq_rprime|l_eq_lprime|free)");
}

inline OutputFormat parse_format(std::string_view t) {
  if (t == "csv") return OutputFormat::csv;
  if (t == "json") return OutputFormat::json;
  if (t == "svg") return OutputFormat::svg;
  throw Error(ErrorCode::config, "unknown format '" + std::string(t) + "' (expected csv|json|svg)");
}

inline BellFormula parse_bell_formula(std::string_view t) {
  if (t == "horodecki") return BellFormula::horodecki;
  if (t == "pq") return BellFormula::pq;
  throw Error(ErrorCode::config, "unknown bell formula '" + std::string(t) + "' (expected horodecki|pq)");
}

/// Real number, or one of the phase shorthands "pi", "-pi", "pi/2".
inline double parse_real(std::string_view t, std::string_view what) {
  if (t == "pi") return std::numbers::pi;
  if (t == "-pi") return -std::numbers::pi;
  if (t == "pi/2") return std::numbers::pi / 2.0;
  double v = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw Error(ErrorCode::config, "invalid number '" + std::string(t) + "' for " + std::string(what));
  return v;
}

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 11;

  static Grid parse(std::string_view text, std::string_view what) {
    const auto a = text.find(':');
    const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
    if (a == std::string_view::npos || b == std::string_view::npos)
      throw Error(ErrorCode::config, std::string(what) + " must look like start:stop:steps");
    Grid g;
    g.start = parse_real(text.substr(0, a), what);
    g.stop = parse_real(text.substr(a + 1, b - a - 1), what);
    const auto n = text.substr(b + 1);
    std::size_t steps = 0;
    auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), steps);
    if (ec != std::errc{} || ptr != n.data() + n.size())
      throw Error(ErrorCode::config, "invalid step count in " + std::string(what));
    g.steps = steps;
    g.validate(what);
    return g;
  }

  void validate(std::string_view what) const {
    if (steps < 1) throw Error(ErrorCode::config, std::string(what) + ": steps must be >= 1");
    if (!(start <= stop)) throw Error(ErrorCode::config, std::string(what) + ": start must not exceed stop");
  }

  std::vector<double> values() const {
    if (steps == 1) return {start};
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i)
      v[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    v.back() = stop;
    return v;
  }
};

struct SweepConfig {
  Statistics statistics = Statistics::fermion;
  std::optional<double> theta;  // unset: the phase matching (target, statistics)
  Target target = Target::minus;
  Constraint constraint = Constraint::l_eq_rprime;
  Grid p_grid{0.0, 1.0, 11};
  Grid outer_grid{0.0, 1.0, 11};
  double lprime = 0.0;  // used by Constraint::free
  std::string output;   // empty: stdout
  OutputFormat format = OutputFormat::csv;
  BellFormula bell_formula = BellFormula::horodecki;

  double effective_theta() const { return theta.value_or(canonical_theta(target, statistics)); }

  void validate() const {
    p_grid.validate("p_grid");
    outer_grid.validate(constraint == Constraint::l_eq_rprime ? "indist_grid" : "l_grid");
    if (p_grid.start < 0.0 || p_grid.stop > 1.0) throw Error(ErrorCode::config, "p_grid must lie in [0, 1]");
    if (outer_grid.start < 0.0 || outer_grid.stop > 1.0)
      throw Error(ErrorCode::config, "indist/l grid must lie in [0, 1]");
    if (!(lprime >= 0.0 && lprime <= 1.0)) throw Error(ErrorCode::config, "lprime must lie in [0, 1]");
    if (theta && !std::isfinite(*theta)) throw Error(ErrorCode::config, "theta must be finite");
  }
};

/// Applies one `key = value` setting; keys use underscores.
inline void apply_setting(SweepConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "statistics") cfg.statistics = parse_statistics(value);
  else if (key == "theta") cfg.theta = parse_real(value, "theta");
  else if (key == "target") cfg.target = parse_target(value);
  else if (key == "constraint") cfg.constraint = parse_constraint(value);
  else if (key == "p_grid") cfg.p_grid = Grid::parse(value, "p_grid");
  else if (key == "indist_grid" || key == "l_grid") cfg.outer_grid = Grid::parse(value, key);
  else if (key == "lprime") cfg.lprime = parse_real(value, "lprime");
  else if (key == "output") cfg.output = std::string(value);
  else if (key == "format") cfg.format = parse_format(value);
  else if (key == "bell_formula") cfg.bell_formula = parse_bell_formula(value);
  else throw Error(ErrorCode::config, "unknown setting '" + std::string(key) + "'");
}

// ---------------------------------------------------------------------------
// Wave-function families

/// l on [1/sqrt2, 1] with I_LR(l, sqrt(1 - l^2)) = indist. I_LR falls
/// monotonically from 1 to 0 on that branch.
inline double l_for_indist(double indist) {
  if (!(indist >= 0.0 && indist <= 1.0)) throw Error(ErrorCode::invalid_argument, "I_LR outside [0, 1]");
  const double lo_end = std::numbers::sqrt2 / 2.0;
  if (indist >= 1.0) return lo_end;
  if (indist <= 0.0) return 1.0;
  double lo = lo_end;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (indist_lr(mid, std::sqrt(1.0 - mid * mid)) > indist)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct WavePair {
  double l = 1.0;
  double lprime = 0.0;
};

inline WavePair family_point(Constraint c, double outer, double fixed_lprime) {
  switch (c) {
    case Constraint::l_eq_rprime: {
      const double l = l_for_indist(outer);
      return {l, std::sqrt(std::max(0.0, 1.0 - l * l))};
    }
    case Constraint::l_eq_lprime: return {outer, outer};
    case Constraint::free: return {outer, fixed_lprime};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Point evaluation

struct SweepRecord {
  double p = 0.0;
  double l = 0.0;
  double lprime = 0.0;
  double theta = 0.0;
  Statistics statistics = Statistics::fermion;
  double indist = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  double p_lr = 0.0;
  double bell = 0.0;
  bool detected = true;  // false: zero detection probability, metrics are NaN
};

struct PointSpec {
  Statistics statistics = Statistics::fermion;
  double theta = 0.0;
  Target target = Target::minus;
  double l = 1.0;
  double lprime = 0.0;
  double p = 0.0;
  BellFormula bell_formula = BellFormula::horodecki;
};

inline SweepRecord evaluate_point(const PointSpec& s) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRecord rec;
  rec.p = s.p;
  rec.l = s.l;
  rec.lprime = s.lprime;
  rec.theta = s.theta;
  rec.statistics = s.statistics;
  const auto psi1 = PeakedShape::from_l(s.l);
  const auto psi2 = PeakedShape::from_l(s.lprime, s.theta);
  try {
    rec.indist = degree_two(make_peaked_wave(psi1, lr_basis()), make_peaked_wave(psi2, lr_basis())).entropy;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::undefined_entropy) throw;
    rec.indist = nan;
  }
  try {
    const auto rho = project(werner_direct({s.p, s.target, psi1, psi2, s.statistics}), OperationalRegionSet::lr());
    const auto report = analyze(rho);
    rec.p_lr = rho.probability;
    rec.concurrence = report.concurrence;
    rec.eof = report.eof;
    rec.bell = s.bell_formula == BellFormula::horodecki ? report.bell : bell_xstate(rho).pq_branch;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::zero_probability && e.code() != ErrorCode::zero_trace) throw;
    rec.detected = false;
    rec.p_lr = 0.0;
    rec.concurrence = rec.eof = rec.bell = nan;
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Parallel evaluation

/// Worker count from ISLOCC_THREADS; unset or 0 means hardware concurrency.
inline unsigned thread_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("ISLOCC_THREADS"); env != nullptr && *env != '\0') {
    const std::string_view t(env);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
    if (ec != std::errc{} || ptr != t.data() + t.size())
      throw Error(ErrorCode::config, "ISLOCC_THREADS must be a non-negative integer");
  }
  if (n == 0) n = std::max(1U, std::thread::hardware_concurrency());
  return n;
}

/// out[i] = f(i); results land by index, so the order never depends on
/// scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f, unsigned threads) {
  std::vector<T> out(count);
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      (void)t;
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          out[i] = f(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, unsigned threads = thread_count()) {
  cfg.validate();
  const auto outer = cfg.outer_grid.values();
  const auto ps = cfg.p_grid.values();
  std::vector<WavePair> waves;
  waves.reserve(outer.size());
  for (double v : outer) waves.push_back(family_point(cfg.constraint, v, cfg.lprime));
  const double theta = cfg.effective_theta();
  return parallel_map<SweepRecord>(
      outer.size() * ps.size(),
      [&](std::size_t k) {
        const auto& w = waves[k / ps.size()];
        return evaluate_point({cfg.statistics, theta, cfg.target, w.l, w.lprime, ps[k % ps.size()], cfg.bell_formula});
      },
      threads);
}

// ---------------------------------------------------------------------------
// Bell-violation map

struct BellRegionRow {
  double p = 0.0;
  double indist = 0.0;
  double bell = 0.0;
  bool violated = false;
};

inline std::vector<BellRegionRow> run_bell_region(const SweepConfig& cfg, unsigned threads = thread_count()) {
  const auto records = run_sweep(cfg, threads);
  std::vector<BellRegionRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back({r.p, r.indist, r.bell, r.detected && r.bell > 2.0});
  return rows;
}

// ---------------------------------------------------------------------------
// Threshold search

struct WorstCase {
  double p = 0.0;
  double bell = 0.0;
};

inline constexpr std::size_t kWorstCaseGrid = 101;

/// min over p in [0, 1] of the Bell value at fixed wave functions: grid scan,
/// then golden-section refinement between the neighbours of the grid minimum.
inline WorstCase worst_case_bell(const PointSpec& base) {
  auto bell_at = [&](double p) {
    PointSpec s = base;
    s.p = p;
    const auto r = evaluate_point(s);
    if (!r.detected) throw Error(ErrorCode::zero_probability, "threshold family must stay detectable");
    return r.bell;
  };
  std::size_t best = 0;
  std::vector<double> values(kWorstCaseGrid);
  for (std::size_t i = 0; i < kWorstCaseGrid; ++i) {
    values[i] = bell_at(static_cast<double>(i) / static_cast<double>(kWorstCaseGrid - 1));
    if (values[i] < values[best]) best = i;
  }
  const double step = 1.0 / static_cast<double>(kWorstCaseGrid - 1);
  double a = std::max(0.0, (static_cast<double>(best) - 1.0) * step);
  double b = std::min(1.0, (static_cast<double>(best) + 1.0) * step);
  WorstCase out{static_cast<double>(best) * step, values[best]};
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = bell_at(c);
  double fd = bell_at(d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = bell_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = bell_at(d);
    }
  }
  for (auto [p, f] : {std::pair{c, fc}, std::pair{d, fd}})
    if (f < out.bell) out = {p, f};
  return out;
}

struct ThresholdResult {
  bool found = false;
  double indist = std::numeric_limits<double>::quiet_NaN();
  double l = std::numeric_limits<double>::quiet_NaN();
  double worst_p = std::numeric_limits<double>::quiet_NaN();
  double min_bell = std::numeric_limits<double>::quiet_NaN();
  double concurrence = std::numeric_limits<double>::quiet_NaN();  // at (indist, worst_p)
  int iterations = 0;
};

inline constexpr double kThresholdTolerance = 1e-4;

/// Smallest I_LR (to kThresholdTolerance) on the l = r' family such that the
/// Bell value exceeds 2 for every p in [0, 1]. Not found if even I_LR = 1
/// fails. The predicate is assumed monotone in I_LR.
inline ThresholdResult run_threshold(const SweepConfig& cfg) {
  cfg.validate();
  if (cfg.constraint != Constraint::l_eq_rprime)
    throw Error(ErrorCode::config, "threshold search runs on the l_eq_rprime family");
  const double theta = cfg.effective_theta();
  auto spec_at = [&](double indist) {
    const auto w = family_point(Constraint::l_eq_rprime, indist, 0.0);
    return PointSpec{cfg.statistics, theta, cfg.target, w.l, w.lprime, 0.0, cfg.bell_formula};
  };
  auto holds = [&](double indist) { return worst_case_bell(spec_at(indist)).bell > 2.0; };

  ThresholdResult out;
  if (!holds(1.0)) return out;
  double lo = 0.0;
  double hi = 1.0;
  if (holds(0.0)) {
    hi = 0.0;
  } else {
    while (hi - lo > kThresholdTolerance) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? hi : lo) = mid;
      ++out.iterations;
    }
  }
  auto spec = spec_at(hi);
  const auto worst = worst_case_bell(spec);
  spec.p = worst.p;
  out.found = true;
  out.indist = hi;
  out.l = spec.l;
  out.worst_p = worst.p;
  out.min_bell = worst.bell;
  out.concurrence = evaluate_point(spec).concurrence;
  return out;
}

/// Largest p (bisection, to `tol`) with Bell value above 2 at fixed wave
/// functions, assuming violation holds at p = 0 and the Bell value falls
/// with p. NaN if there is no violation at p = 0; 1 if it persists at p = 1.
inline double violation_boundary_p(PointSpec s, double tol = 1e-10) {
  auto violated = [&](double p) {
    s.p = p;
    const auto r = evaluate_point(s);
    return r.detected && r.bell > 2.0;
  };
  if (!violated(0.0)) return std::numeric_limits<double>::quiet_NaN();
  if (violated(1.0)) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (violated(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace islocc
