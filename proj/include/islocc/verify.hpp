// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file verify.hpp
 * @brief Self-verification suites: seeded random cross-checks between
 *        independent routes through the library.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "islocc/amplitude.hpp"
#include "islocc/entangle.hpp"
#include "islocc/noise.hpp"
#include "islocc/slocc.hpp"
#include "islocc/sweep.hpp"

namespace islocc {

struct VerifyOptions {
  bool inject_fault = false;  // perturbs the closed-form oracles; the oracle suite must then fail
  std::uint64_t seed = 20260101;
  std::size_t scale = 1;      // multiplies the case counts
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;

  bool passed() const noexcept { return cases > 0 && failures == 0; }

  void record(double err) {
    ++cases;
    if (!(err <= tolerance)) ++failures;
    if (std::isnan(err) || err > max_error) max_error = std::isnan(err) ? INFINITY : err;
  }
};

namespace detail {

inline cplx random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

inline SingleParticleState random_particle(const BasisPtr& basis, std::mt19937_64& rng) {
  std::vector<SingleParticleState::Entry> entries;
  double nrm = 0.0;
  for (std::size_t s = 0; s < basis->slot_count(); ++s) {
    entries.push_back({s, random_complex(rng)});
    nrm += std::norm(entries.back().amplitude);
  }
  for (auto& e : entries) e.amplitude /= std::sqrt(nrm);
  return SingleParticleState(basis, std::move(entries));
}

inline ElementaryKet random_ket(const BasisPtr& basis, std::size_t n, Statistics stats, std::mt19937_64& rng) {
  std::vector<SingleParticleState> ps;
  for (std::size_t i = 0; i < n; ++i) ps.push_back(random_particle(basis, rng));
  return ElementaryKet(std::move(ps), stats);
}

inline BasisPtr verify_basis(std::size_t modes) {
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < modes; ++m) labels.push_back("M" + std::to_string(m));
  return make_basis(std::move(labels));
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).cwiseAbs().maxCoeff();
}

struct RandomWerner {
  double l, lprime, p;
  Statistics statistics;
  Target target;
};

inline RandomWerner random_werner(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomWerner w{u(rng), u(rng), u(rng), Statistics::fermion, Target::minus};
  w.statistics = u(rng) < 0.5 ? Statistics::boson : Statistics::fermion;
  w.target = u(rng) < 0.5 ? Target::plus : Target::minus;
  return w;
}

}  // namespace detail

/// Heap's-algorithm permutation sums against Ryser / LU, N = 2..6.
inline SuiteResult verify_amplitudes(const VerifyOptions& opt, std::size_t per_case = 100) {
  SuiteResult res{"amplitude engines", 0, 0, 0.0, 1e-10};
  std::mt19937_64 rng(opt.seed);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto basis = detail::verify_basis(n);
    for (auto stats : {Statistics::boson, Statistics::fermion})
      for (std::size_t k = 0; k < per_case * opt.scale; ++k) {
        const auto bra = detail::random_ket(basis, n, stats, rng);
        const auto ket = detail::random_ket(basis, n, stats, rng);
        const cplx slow = amplitude_permsum(bra, ket);
        const cplx fast = amplitude_fast(bra, ket);
        res.record(std::abs(slow - fast) / std::max(1.0, std::abs(slow)));
      }
  }
  return res;
}

/// Closed-form concurrences and probabilities against the numeric pipeline.
inline SuiteResult verify_oracles(const VerifyOptions& opt, std::size_t count = 500) {
  SuiteResult res{"closed forms vs pipeline", 0, 0, 0.0, 1e-9};
  std::mt19937_64 rng(opt.seed + 1);
  const double fault = opt.inject_fault ? 1e-6 : 0.0;
  std::size_t attempts = 0;
  while (res.cases < 2 * count * opt.scale && attempts++ < 100 * count * opt.scale) {
    const auto w = detail::random_werner(rng);
    const auto psi1 = PeakedShape::from_l(w.l);
    const auto psi2 = PeakedShape::from_l(w.lprime, canonical_theta(w.target, w.statistics));
    const bool minus = w.target == Target::minus;
    const double prob = minus ? oracle_probability_minus(psi1.l, psi1.r, psi2.l, psi2.r, w.p, w.statistics)
                              : oracle_probability_plus(psi1.l, psi1.r, psi2.l, psi2.r, w.p, w.statistics);
    if (!(prob > 1e-6)) continue;
    const double conc = minus ? oracle_concurrence_minus(psi1.l, psi1.r, psi2.l, psi2.r, w.p)
                              : oracle_concurrence_plus(psi1.l, psi1.r, psi2.l, psi2.r, w.p);
    const auto rho = project(werner_direct({w.p, w.target, psi1, psi2, w.statistics}), OperationalRegionSet::lr());
    res.record(std::abs(concurrence(rho).concurrence - (conc + fault)));
    res.record(std::abs(rho.probability - (prob + fault)));
  }
  return res;
}

/// Kraus channel followed by deformation against the directly built mixture.
inline SuiteResult verify_channel(const VerifyOptions& opt, std::size_t per_statistics = 100) {
  SuiteResult res{"channel vs direct Werner", 0, 0, 0.0, 1e-10};
  std::mt19937_64 rng(opt.seed + 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto stats : {Statistics::boson, Statistics::fermion})
    for (std::size_t k = 0; k < per_statistics * opt.scale;) {
      auto w = detail::random_werner(rng);
      w.statistics = stats;
      const WernerSpec spec{w.p, w.target, PeakedShape::from_l(w.l, 2.0 * std::numbers::pi * u(rng)),
                            PeakedShape::from_l(w.lprime, 2.0 * std::numbers::pi * u(rng)), stats};
      const auto regions = OperationalRegionSet::lr();
      try {
        const auto a = project(werner_direct(spec), regions);
        const auto b = project(depolarize_then_deform(spec), regions);
        res.record(std::max(detail::max_abs_diff(a.matrix, b.matrix), std::abs(a.probability - b.probability)));
        ++k;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::zero_probability) throw;
      }
    }
  return res;
}

/// Global trace of the mixture against 1 + eta |<psi1|psi2>|^2 [p/2 +- (1-p)].
inline SuiteResult verify_trace(const VerifyOptions& opt, std::size_t count = 200) {
  SuiteResult res{"Werner trace", 0, 0, 0.0, 1e-10};
  std::mt19937_64 rng(opt.seed + 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t k = 0; k < count * opt.scale; ++k) {
    const auto w = detail::random_werner(rng);
    const auto psi1 = PeakedShape::from_l(w.l, 2.0 * std::numbers::pi * u(rng));
    const auto psi2 = PeakedShape::from_l(w.lprime, 2.0 * std::numbers::pi * u(rng));
    const double ov = std::norm(inner(make_peaked_wave(psi1, lr_basis()), make_peaked_wave(psi2, lr_basis())));
    const double expect = werner_trace_closed_form(ov, w.p, w.target, w.statistics);
    if (!(expect > 1e-9)) continue;
    res.record(std::abs(mixed_trace(werner_direct({w.p, w.target, psi1, psi2, w.statistics})) - expect));
  }
  return res;
}

/// X-state Bell formula against the general Horodecki evaluation, plus the
/// density-matrix invariants of every projected state.
inline SuiteResult verify_xstate(const VerifyOptions& opt, std::size_t count = 1000) {
  SuiteResult res{"X-state Bell vs Horodecki", 0, 0, 0.0, 1e-9};
  std::mt19937_64 rng(opt.seed + 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t k = 0; k < count * opt.scale;) {
    const auto w = detail::random_werner(rng);
    const WernerSpec spec{w.p, w.target, PeakedShape::from_l(w.l, 2.0 * std::numbers::pi * u(rng)),
                          PeakedShape::from_l(w.lprime, 2.0 * std::numbers::pi * u(rng)), w.statistics};
    try {
      const auto rho = project(werner_direct(spec), OperationalRegionSet::lr());
      const Eigen::MatrixXcd& m = rho.matrix;
      const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
      const double trace = std::abs(m.trace() - 1.0);
      const double min_ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
      const double bell = std::abs(bell_xstate(rho).bell - bell_horodecki(rho).bell);
      res.record(std::max({herm, trace, std::max(0.0, -min_ev), bell}));
      ++k;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::zero_probability) throw;
    }
  }
  return res;
}

/// (fermion, theta) and (boson, theta + pi) give the same projected state on
/// the l = r' family. P_LR is not part of the identity: the global trace
/// depends on |<psi1|psi2>|^2, which the phase shift changes.
inline SuiteResult verify_phase_switch(const VerifyOptions& opt, std::size_t grid = 11) {
  SuiteResult res{"statistics-phase switch", 0, 0, 0.0, 1e-10};
  std::mt19937_64 rng(opt.seed + 5);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  const std::size_t n = grid * opt.scale;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double l = std::numbers::sqrt2 / 2.0 + (1.0 - std::numbers::sqrt2 / 2.0) * static_cast<double>(i) / static_cast<double>(n - 1);
      const double p = static_cast<double>(j) / static_cast<double>(n - 1);
      const double theta = u(rng);
      const double lp = std::sqrt(std::max(0.0, 1.0 - l * l));
      for (auto target : {Target::minus, Target::plus}) {
        PointSpec f{Statistics::fermion, theta, target, l, lp, p, BellFormula::horodecki};
        PointSpec b{Statistics::boson, theta + std::numbers::pi, target, l, lp, p, BellFormula::horodecki};
        const auto rf = evaluate_point(f);
        const auto rb = evaluate_point(b);
        if (rf.detected != rb.detected) {
          res.record(INFINITY);
          continue;
        }
        if (!rf.detected) continue;
        res.record(std::abs(rf.concurrence - rb.concurrence));
      }
    }
  return res;
}

inline std::vector<SuiteResult> run_verification(const VerifyOptions& opt = {}) {
  return {verify_amplitudes(opt), verify_oracles(opt), verify_channel(opt),
          verify_trace(opt),      verify_xstate(opt),  verify_phase_switch(opt)};
}

}  // namespace islocc
