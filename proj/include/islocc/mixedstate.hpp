// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file mixedstate.hpp
 * @brief Superpositions of elementary kets and weighted ensembles of them.
 *
 * States are not normalized on construction. The norm of a pure state and
 * the trace of an ensemble are computed from no-label amplitudes; the trace
 * goes through an orthogonal basis of symmetrized product kets, which is the
 * resolution of identity on the N-particle space:
 *
 *   1 = sum_e |e><e| / <e|e>,   <e|e> = prod_k n_k!  (bosons),  1  (fermions)
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "islocc/amplitude.hpp"
#include "islocc/error.hpp"

namespace islocc {

class PureNState {
 public:
  struct Term {
    cplx coefficient;
    ElementaryKet ket;
  };

  explicit PureNState(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error(ErrorCode::invalid_argument, "pure state needs at least one term");
    const auto& first = terms_.front().ket;
    for (const auto& t : terms_) {
      if (t.ket.size() != first.size()) throw Error(ErrorCode::size_mismatch, "terms with different particle numbers");
      if (t.ket.statistics() != first.statistics())
        throw Error(ErrorCode::statistics_mismatch, "terms with different statistics");
      require_same_basis(first.basis(), t.ket.basis());
    }
  }

  PureNState(ElementaryKet ket) : PureNState(std::vector<Term>{{cplx{1.0, 0.0}, std::move(ket)}}) {}  // NOLINT

  const std::vector<Term>& terms() const noexcept { return terms_; }
  Statistics statistics() const noexcept { return terms_.front().ket.statistics(); }
  std::size_t particle_count() const noexcept { return terms_.front().ket.size(); }
  const BasisPtr& basis() const noexcept { return terms_.front().ket.basis(); }

 private:
  std::vector<Term> terms_;
};

/// <bra|state>
inline cplx overlap(const ElementaryKet& bra, const PureNState& state) {
  cplx sum{0.0, 0.0};
  for (const auto& t : state.terms()) sum += t.coefficient * amplitude(bra, t.ket);
  return sum;
}

/// <a|b>
inline cplx overlap(const PureNState& a, const PureNState& b) {
  cplx sum{0.0, 0.0};
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) sum += std::conj(ta.coefficient) * tb.coefficient * amplitude(ta.ket, tb.ket);
  return sum;
}

inline double pure_norm_sq(const PureNState& s) { return std::max(0.0, overlap(s, s).real()); }

class MixedState {
 public:
  struct Member {
    double weight;
    PureNState state;
  };

  explicit MixedState(std::vector<Member> members) : members_(std::move(members)) {
    if (members_.empty()) throw Error(ErrorCode::invalid_argument, "ensemble must not be empty");
    bool any_positive = false;
    const auto& first = members_.front().state;
    for (const auto& m : members_) {
      if (!std::isfinite(m.weight) || m.weight < 0.0)
        throw Error(ErrorCode::invalid_argument, "ensemble weights must be finite and non-negative");
      any_positive = any_positive || m.weight > 0.0;
      if (m.state.particle_count() != first.particle_count())
        throw Error(ErrorCode::size_mismatch, "ensemble members with different particle numbers");
      if (m.state.statistics() != first.statistics())
        throw Error(ErrorCode::statistics_mismatch, "ensemble members with different statistics");
      require_same_basis(first.basis(), m.state.basis());
    }
    if (!any_positive) throw Error(ErrorCode::invalid_argument, "ensemble needs a positive weight");
  }

  MixedState(PureNState pure) : MixedState(std::vector<Member>{{1.0, std::move(pure)}}) {}  // NOLINT

  const std::vector<Member>& members() const noexcept { return members_; }
  Statistics statistics() const noexcept { return members_.front().state.statistics(); }
  std::size_t particle_count() const noexcept { return members_.front().state.particle_count(); }
  const BasisPtr& basis() const noexcept { return members_.front().state.basis(); }

 private:
  std::vector<Member> members_;
};

/// Orthogonal (not normalized) basis of symmetrized product kets over a set
/// of single-particle slots.
struct SymmetrizedBasis {
  std::vector<ElementaryKet> elements;
  std::vector<double> norms_sq;
};

inline SymmetrizedBasis symmetrized_basis(const BasisPtr& basis, std::span<const std::size_t> slots, std::size_t n,
                                          Statistics statistics) {
  SymmetrizedBasis out;
  if (n == 0) throw Error(ErrorCode::invalid_argument, "symmetrized basis needs n >= 1");
  std::vector<std::size_t> pick(n, 0);  // indices into `slots`, nondecreasing
  const bool fermion = statistics == Statistics::fermion;
  const std::size_t k = slots.size();
  if (k == 0 || (fermion && n > k)) return out;

  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == n) {
      std::vector<SingleParticleState> particles;
      particles.reserve(n);
      double norm = 1.0;
      std::size_t run = 1;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t s = slots[pick[i]];
        particles.push_back(SingleParticleState(basis, {{s, cplx{1.0, 0.0}}}));
        if (i > 0 && pick[i] == pick[i - 1]) {
          ++run;
          norm *= static_cast<double>(run);
        } else {
          run = 1;
        }
      }
      out.elements.emplace_back(std::move(particles), statistics);
      out.norms_sq.push_back(norm);
      return;
    }
    for (std::size_t j = from; j < k; ++j) {
      pick[pos] = j;
      rec(pos + 1, fermion ? j + 1 : j);
    }
  };
  rec(0, 0);
  return out;
}

inline SymmetrizedBasis symmetrized_basis(const BasisPtr& basis, std::size_t n, Statistics statistics) {
  std::vector<std::size_t> slots(basis->slot_count());
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
  return symmetrized_basis(basis, slots, n, statistics);
}

/// Single-particle slots touched by any particle of any ket in the ensemble.
inline std::vector<std::size_t> support_slots(const MixedState& m) {
  std::set<std::size_t> slots;
  for (const auto& member : m.members())
    for (const auto& term : member.state.terms())
      for (const auto& particle : term.ket.particles())
        for (const auto& e : particle.entries()) slots.insert(e.index);
  return {slots.begin(), slots.end()};
}

inline constexpr double kTraceFloor = 1e-12;

/// Tr(rho) = sum_e <e|rho|e> / <e|e>, restricted to basis kets built from
/// the ensemble's support (all others have vanishing overlap).
inline double mixed_trace(const MixedState& m) {
  const auto slots = support_slots(m);
  const auto sb = symmetrized_basis(m.basis(), slots, m.particle_count(), m.statistics());
  double trace = 0.0;
  for (std::size_t i = 0; i < sb.elements.size(); ++i) {
    double diag = 0.0;
    for (const auto& member : m.members()) {
      if (member.weight == 0.0) continue;
      diag += member.weight * std::norm(overlap(sb.elements[i], member.state));
    }
    trace += diag / sb.norms_sq[i];
  }
  if (!(trace > kTraceFloor)) throw Error(ErrorCode::zero_trace, "ensemble has vanishing trace");
  return trace;
}

/// <bra| rho |ket> = sum_w w <bra|s_w><s_w|ket>
inline cplx matrix_element(const ElementaryKet& bra, const MixedState& m, const ElementaryKet& ket) {
  cplx sum{0.0, 0.0};
  for (const auto& member : m.members()) {
    if (member.weight == 0.0) continue;
    sum += member.weight * overlap(bra, member.state) * std::conj(overlap(ket, member.state));
  }
  return sum;
}

}  // namespace islocc
