// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file noise.hpp
 * @brief Werner states of two identical qubits with overlapping spatial
 *        wave functions.
 *
 * Two constructions are provided:
 *  - werner_direct: (1-p)|1_t><1_t| + (p/4) sum_{i,s}|i_s><i_s| built from the
 *    unnormalized Bell-like states |1_+-> and |2_+->;
 *  - depolarize_then_deform: a Bell pair on separated modes L1, L2, a
 *    depolarizing channel on the pseudospin in L1, then the substitution
 *    |L1> -> |psi1>, |L2> -> |psi2> on every ket.
 *
 * The closed-form concurrences and detection probabilities at the end of the
 * file hold for |psi1> = l|L> + r|R>, |psi2> = l'|L> + r' e^{i theta}|R> with
 *   target 1_-: fermions theta = 0, bosons theta = pi;
 *   target 1_+: fermions theta = pi, bosons theta = 0.
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "islocc/entangle.hpp"
#include "islocc/mixedstate.hpp"
#include "islocc/spstate.hpp"

namespace islocc {

enum class Target { plus, minus };

inline const char* to_string(Target t) noexcept { return t == Target::plus ? "1_plus" : "1_minus"; }

inline Target parse_target(std::string_view text) {
  if (text == "1_plus" || text == "plus" || text == "1+" || text == "+") return Target::plus;
  if (text == "1_minus" || text == "minus" || text == "1-" || text == "-") return Target::minus;
  throw Error(ErrorCode::config, "unknown target '" + std::string(text) + "' (expected 1_plus|1_minus)");
}

/// The phase of psi2 for which the closed forms below apply.
inline double canonical_theta(Target target, Statistics statistics) noexcept {
  const bool zero = (target == Target::minus) == (statistics == Statistics::fermion);
  return zero ? 0.0 : std::numbers::pi;
}

struct BellStates {
  PureNState one_plus;
  PureNState one_minus;
  PureNState two_plus;
  PureNState two_minus;

  const PureNState& target(Target t) const noexcept { return t == Target::plus ? one_plus : one_minus; }
};

/// |1_+-> = (|psi1 up, psi2 down> +- |psi1 down, psi2 up>)/sqrt2,
/// |2_+-> = (|psi1 up, psi2 up> +- |psi1 down, psi2 down>)/sqrt2; not normalized.
inline BellStates bell_states(const SpatialWave& psi1, const SpatialWave& psi2, Statistics statistics) {
  require_same_basis(psi1.basis(), psi2.basis());
  const double h = std::numbers::sqrt2 / 2.0;
  auto ket = [&](Spin s1, Spin s2) {
    return ElementaryKet({tensor(psi1, s1), tensor(psi2, s2)}, statistics);
  };
  auto pair = [&](Spin a1, Spin a2, Spin b1, Spin b2, double sign) {
    return PureNState({{cplx{h, 0.0}, ket(a1, a2)}, {cplx{sign * h, 0.0}, ket(b1, b2)}});
  };
  using enum Spin;
  return BellStates{pair(up, down, down, up, +1.0), pair(up, down, down, up, -1.0), pair(up, up, down, down, +1.0),
                    pair(up, up, down, down, -1.0)};
}

inline BellStates bell_states(const PeakedShape& psi1, const PeakedShape& psi2, Statistics statistics) {
  const auto basis = lr_basis();
  return bell_states(make_peaked_wave(psi1, basis), make_peaked_wave(psi2, basis), statistics);
}

struct WernerSpec {
  double p = 0.0;
  Target target = Target::minus;
  PeakedShape psi1 = PeakedShape::from_l(1.0);
  PeakedShape psi2 = PeakedShape::from_l(0.0);
  Statistics statistics = Statistics::fermion;

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_argument, "noise probability outside [0, 1]");
    psi1.validate();
    psi2.validate();
  }
};

namespace detail {

inline MixedState werner_mixture(const BellStates& b, Target target, double p) {
  const double q = p / 4.0;
  return MixedState({{1.0 - p, b.target(target)},
                     {q, b.one_plus},
                     {q, b.one_minus},
                     {q, b.two_plus},
                     {q, b.two_minus}});
}

}  // namespace detail

inline MixedState werner_direct(const WernerSpec& spec) {
  spec.validate();
  return detail::werner_mixture(bell_states(spec.psi1, spec.psi2, spec.statistics), spec.target, spec.p);
}

/// Single-qubit Kraus operators acting on the pseudospin of the particle in
/// `acting_mode`.
struct KrausSet {
  std::array<Eigen::Matrix2cd, 4> operators;
  std::string acting_mode;

  /// K0 = sqrt(1 - 3p/4) 1, K_i = sqrt(p/4) sigma_i
  static KrausSet depolarizing(double p, std::string acting_mode) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_argument, "noise probability outside [0, 1]");
    const double k0 = std::sqrt(1.0 - 3.0 * p / 4.0);
    const double ki = std::sqrt(p / 4.0);
    return KrausSet{{k0 * Eigen::Matrix2cd::Identity(), ki * pauli::x(), ki * pauli::y(), ki * pauli::z()},
                    std::move(acting_mode)};
  }

  /// || sum_i K_i^dagger K_i - 1 ||
  double completeness_defect() const {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    for (const auto& k : operators) s += k.adjoint() * k;
    return (s - Eigen::Matrix2cd::Identity()).norm();
  }
};

/// Applies `op` to the pseudospin of the one particle of each ket that sits
/// in `mode`.
inline PureNState apply_localized(const Eigen::Matrix2cd& op, std::size_t mode, const PureNState& state) {
  std::vector<PureNState::Term> terms;
  terms.reserve(state.terms().size());
  for (const auto& t : state.terms()) {
    std::size_t hit = t.ket.size();
    for (std::size_t i = 0; i < t.ket.size(); ++i) {
      if (!t.ket.particle(i).has_support_on(mode)) continue;
      if (hit != t.ket.size())
        throw Error(ErrorCode::invalid_argument, "localized operator needs exactly one particle in the mode");
      hit = i;
    }
    if (hit == t.ket.size())
      throw Error(ErrorCode::invalid_argument, "localized operator needs exactly one particle in the mode");
    terms.push_back({t.coefficient, t.ket.with_particle(hit, t.ket.particle(hit).with_spin_operator(mode, op))});
  }
  return PureNState(std::move(terms));
}

/// rho -> sum_i K_i rho K_i^dagger, member by member.
inline MixedState apply_channel(const MixedState& m, const KrausSet& kraus) {
  const std::size_t mode = m.basis()->require(kraus.acting_mode);
  std::vector<MixedState::Member> out;
  out.reserve(m.members().size() * kraus.operators.size());
  for (const auto& member : m.members())
    for (const auto& k : kraus.operators) {
      if (k.isZero(0.0)) continue;
      out.push_back({member.weight, apply_localized(k, mode, member.state)});
    }
  return MixedState(std::move(out));
}

/// Linear substitution |m> -> image(m) on the spatial part of every particle.
inline MixedState deform(const MixedState& m, const std::vector<std::pair<std::string, SpatialWave>>& images,
                         const BasisPtr& target) {
  const auto& source = *m.basis();
  std::vector<const SpatialWave*> image_of(source.size(), nullptr);
  for (const auto& [label, wave] : images) {
    require_same_basis(wave.basis(), target);
    image_of[source.require(label)] = &wave;
  }
  auto map_particle = [&](const SingleParticleState& s) {
    std::vector<SingleParticleState::Entry> out;
    for (const auto& e : s.entries()) {
      const SpatialWave* w = image_of[e.mode()];
      if (w == nullptr) throw Error(ErrorCode::missing_mode, "no deformation image for mode '" + source.label(e.mode()) + "'");
      for (const auto& we : w->entries()) out.push_back({slot_of(we.index, e.spin()), e.amplitude * we.amplitude});
    }
    return SingleParticleState(target, std::move(out));
  };
  std::vector<MixedState::Member> members;
  members.reserve(m.members().size());
  for (const auto& member : m.members()) {
    std::vector<PureNState::Term> terms;
    for (const auto& t : member.state.terms()) {
      std::vector<SingleParticleState> particles;
      for (const auto& p : t.ket.particles()) particles.push_back(map_particle(p));
      terms.push_back({t.coefficient, ElementaryKet(std::move(particles), t.ket.statistics())});
    }
    members.push_back({member.weight, PureNState(std::move(terms))});
  }
  return MixedState(std::move(members));
}

inline BasisPtr separated_basis() {
  static const BasisPtr basis = make_basis({"L1", "L2"});
  return basis;
}

/// Depolarized Bell pair on the separated modes L1, L2, before deformation.
inline MixedState depolarized_separated_pair(double p, Target target, Statistics statistics) {
  const auto basis = separated_basis();
  const auto bell = bell_states(SpatialWave::localized(basis, "L1"), SpatialWave::localized(basis, "L2"), statistics);
  return apply_channel(MixedState(bell.target(target)), KrausSet::depolarizing(p, "L1"));
}

inline MixedState depolarize_then_deform(double p, Target target, const PeakedShape& psi1, const PeakedShape& psi2,
                                         Statistics statistics) {
  const auto lr = lr_basis();
  return deform(depolarized_separated_pair(p, target, statistics),
                {{"L1", make_peaked_wave(psi1, lr)}, {"L2", make_peaked_wave(psi2, lr)}}, lr);
}

inline MixedState depolarize_then_deform(const WernerSpec& spec) {
  spec.validate();
  return depolarize_then_deform(spec.p, spec.target, spec.psi1, spec.psi2, spec.statistics);
}

// ---------------------------------------------------------------------------
// Closed forms

namespace detail {

inline double oracle_denominator(double l, double r, double lp, double rp, double cross) {
  return l * l * rp * rp + lp * lp * r * r + l * rp * r * lp * cross;
}

inline double checked(double den) {
  if (!(den > 0.0)) throw Error(ErrorCode::zero_probability, "closed form undefined: zero detection probability");
  return den;
}

}  // namespace detail

inline double oracle_concurrence_minus(double l, double r, double lp, double rp, double p) {
  const double s = l * rp + lp * r;
  const double d = l * rp - lp * r;
  const double den = detail::checked(4.0 * detail::oracle_denominator(l, r, lp, rp, 2.0 - 3.0 * p));
  return std::max(0.0, ((4.0 - 3.0 * p) * s * s - 3.0 * p * d * d) / den);
}

inline double oracle_probability_minus(double l, double r, double lp, double rp, double p, Statistics statistics) {
  const double e = eta(statistics);
  const double ov = l * lp - e * r * rp;
  return 2.0 * detail::oracle_denominator(l, r, lp, rp, 2.0 - 3.0 * p) / (2.0 - e * (2.0 - 3.0 * p) * ov * ov);
}

inline double oracle_concurrence_plus(double l, double r, double lp, double rp, double p) {
  const double s = l * rp + lp * r;
  const double d = l * rp - lp * r;
  const double den = detail::checked(4.0 * detail::oracle_denominator(l, r, lp, rp, 2.0 - p));
  return std::max(0.0, ((4.0 - 5.0 * p) * s * s - p * d * d) / den);
}

inline double oracle_probability_plus(double l, double r, double lp, double rp, double p, Statistics statistics) {
  const double e = eta(statistics);
  const double ov = l * lp + e * r * rp;
  return 2.0 * detail::oracle_denominator(l, r, lp, rp, 2.0 - p) / (2.0 + e * (2.0 - p) * ov * ov);
}

/// Global trace of werner_direct: 1 + eta |<psi1|psi2>|^2 [p/2 +- (1-p)].
inline double werner_trace_closed_form(double overlap_sq, double p, Target target, Statistics statistics) {
  const double sign = target == Target::plus ? 1.0 : -1.0;
  return 1.0 + eta(statistics) * overlap_sq * (p / 2.0 + sign * (1.0 - p));
}

}  // namespace islocc
