// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file indist.hpp
 * @brief Entropic degree of spatial indistinguishability under local
 *        particle counting.
 *
 * For N states and N regions, P[i][j] = |<R_i|psi_j>|^2 (spin summed out).
 * Each permutation p of the states gets the joint probability
 * prod_i P[i][p_i]; the degree is the Shannon entropy (bits) of these joint
 * probabilities after normalizing by their sum Z. It ranges over
 * [0, log2 N!].
 */

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "islocc/detail/math.hpp"
#include "islocc/slocc.hpp"
#include "islocc/spstate.hpp"

namespace islocc {

template <class S>
concept SpatiallyResolved = requires(const S& s, std::size_t mode) {
  { s.mode_probability(mode) } -> std::convertible_to<double>;
  { s.basis() } -> std::convertible_to<BasisPtr>;
};

struct PermutationProbability {
  std::vector<std::size_t> permutation;  // permutation[i] = state detected in region i
  double probability = 0.0;
};

struct IndistinguishabilityBreakdown {
  std::vector<PermutationProbability> joint_probs;  // lexicographic permutation order
  double normalizer = 0.0;
  double entropy = 0.0;
};

template <SpatiallyResolved S>
IndistinguishabilityBreakdown degree_n(std::span<const S> states, const OperationalRegionSet& regions) {
  const std::size_t n = states.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "no states");
  if (regions.size() != n)
    throw Error(ErrorCode::size_mismatch, "need as many regions as states");
  if (n > 10) throw Error(ErrorCode::above_cap, "indistinguishability limited to 10 particles");
  for (const auto& s : states) require_same_basis(states.front().basis(), s.basis());
  const auto modes = regions.modes_in(*states.front().basis());

  std::vector<std::vector<double>> single(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) single[i][j] = states[j].mode_probability(modes[i]);

  IndistinguishabilityBreakdown out;
  out.joint_probs.reserve(detail::factorial(n));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) p *= single[i][perm[i]];
    out.joint_probs.push_back({perm, p});
    out.normalizer += p;
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!(out.normalizer > 0.0))
    throw Error(ErrorCode::undefined_entropy, "no permutation of the states is detectable in the regions");

  double h = 0.0;
  for (const auto& jp : out.joint_probs) h += detail::entropy_term(jp.probability / out.normalizer);
  out.entropy = std::clamp(h, 0.0, detail::log2_factorial(n));
  return out;
}

template <SpatiallyResolved S>
IndistinguishabilityBreakdown degree_n(const std::vector<S>& states, const OperationalRegionSet& regions) {
  return degree_n(std::span<const S>(states), regions);
}

/// Two-particle degree I_LR. joint_probs[0] is P_12 (psi1 found in the first
/// region), joint_probs[1] is P_21.
template <SpatiallyResolved S>
IndistinguishabilityBreakdown degree_two(const S& psi1, const S& psi2,
                                         const OperationalRegionSet& regions = OperationalRegionSet::lr()) {
  if (regions.size() != 2) throw Error(ErrorCode::size_mismatch, "degree_two needs exactly two regions");
  const std::vector<S> states{psi1, psi2};
  return degree_n(std::span<const S>(states), regions);
}

/// I_LR of two peaked waves, l|L> + r e^{i theta}|R>; the phase is irrelevant.
inline double indist_lr(double l, double lprime) {
  const auto basis = lr_basis();
  return degree_two(make_peaked_wave(PeakedShape::from_l(l), basis),
                    make_peaked_wave(PeakedShape::from_l(lprime), basis))
      .entropy;
}

}  // namespace islocc
