// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file amplitude.hpp
 * @brief N-particle probability amplitudes between elementary kets of
 *        identical particles.
 *
 * <chi'_1..chi'_N | chi_1..chi_N> = sum_P eta^P prod_i <chi'_i|chi_{P_i}>,
 * i.e. the permanent (bosons) or determinant (fermions) of the overlap
 * matrix M[i][j] = <chi'_i|chi_j>. Two evaluation routes are provided and
 * kept side by side: a literal permutation sum, and Ryser's formula / LU
 * factorization.
 */

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "islocc/error.hpp"
#include "islocc/spstate.hpp"

namespace islocc {

enum class Statistics : int { boson = 1, fermion = -1 };

constexpr int eta(Statistics s) noexcept { return static_cast<int>(s); }

inline const char* to_string(Statistics s) noexcept { return s == Statistics::boson ? "boson" : "fermion"; }

inline Statistics parse_statistics(std::string_view text) {
  if (text == "boson" || text == "bosons" || text == "b") return Statistics::boson;
  if (text == "fermion" || text == "fermions" || text == "f") return Statistics::fermion;
  throw Error(ErrorCode::config, "unknown statistics '" + std::string(text) + "' (expected boson|fermion)");
}

/// Product ket |chi_1, ..., chi_N> of identical particles.
class ElementaryKet {
 public:
  ElementaryKet(std::vector<SingleParticleState> particles, Statistics statistics)
      : particles_(std::move(particles)), statistics_(statistics) {
    if (particles_.empty()) throw Error(ErrorCode::invalid_argument, "elementary ket needs at least one particle");
    for (const auto& p : particles_) require_same_basis(particles_.front().basis(), p.basis());
  }

  std::size_t size() const noexcept { return particles_.size(); }
  const std::vector<SingleParticleState>& particles() const noexcept { return particles_; }
  const SingleParticleState& particle(std::size_t i) const { return particles_.at(i); }
  Statistics statistics() const noexcept { return statistics_; }
  const BasisPtr& basis() const noexcept { return particles_.front().basis(); }

  ElementaryKet with_particle(std::size_t i, SingleParticleState state) const {
    auto copy = particles_;
    copy.at(i) = std::move(state);
    return ElementaryKet(std::move(copy), statistics_);
  }

 private:
  std::vector<SingleParticleState> particles_;
  Statistics statistics_;
};

using OverlapMatrix = Eigen::MatrixXcd;

inline void require_compatible(const ElementaryKet& bra, const ElementaryKet& ket) {
  if (bra.size() != ket.size())
    throw Error(ErrorCode::size_mismatch, "bra has " + std::to_string(bra.size()) + " particles, ket has " +
                                              std::to_string(ket.size()));
  if (bra.statistics() != ket.statistics())
    throw Error(ErrorCode::statistics_mismatch, "bra and ket obey different statistics");
  require_same_basis(bra.basis(), ket.basis());
}

/// M[i][j] = <bra_i | ket_j>
inline OverlapMatrix overlap_matrix(const ElementaryKet& bra, const ElementaryKet& ket) {
  require_compatible(bra, ket);
  const auto n = static_cast<Eigen::Index>(bra.size());
  OverlapMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = inner(bra.particle(static_cast<std::size_t>(i)), ket.particle(static_cast<std::size_t>(j)));
  return m;
}

inline constexpr std::size_t kDefaultPermutationCap = 8;

/// sum_P eta^P prod_i m(i, P_i), enumerated with Heap's algorithm. Every
/// step of Heap's algorithm is a single transposition, so the parity is
/// tracked by flipping a sign per step.
inline cplx permutation_sum(const Eigen::MatrixXcd& m, Statistics statistics) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::size_mismatch, "overlap matrix must be square");
  const auto n = static_cast<std::size_t>(m.rows());
  if (n == 0) return {1.0, 0.0};

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::size_t> counter(n, 0);

  auto product = [&] {
    cplx t{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) t *= m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i]));
    return t;
  };

  const bool fermion = statistics == Statistics::fermion;
  double sign = 1.0;
  cplx sum = product();
  std::size_t i = 1;
  while (i < n) {
    if (counter[i] < i) {
      std::swap(perm[i % 2 == 0 ? 0 : counter[i]], perm[i]);
      if (fermion) sign = -sign;
      sum += sign * product();
      ++counter[i];
      i = 1;
    } else {
      counter[i] = 0;
      ++i;
    }
  }
  return sum;
}

/// Permanent by Ryser's formula with Gray-code subset ordering, O(2^n n).
inline cplx ryser_permanent(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::size_mismatch, "permanent of a non-square matrix");
  const auto n = static_cast<std::size_t>(m.rows());
  if (n == 0) return {1.0, 0.0};
  if (n > 40) throw Error(ErrorCode::above_cap, "Ryser permanent limited to n <= 40");

  std::vector<cplx> row_sums(n, cplx{0.0, 0.0});
  cplx total{0.0, 0.0};
  std::uint64_t previous = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const std::uint64_t changed = gray ^ previous;
    const auto col = static_cast<Eigen::Index>(std::countr_zero(changed));
    const bool added = (gray & changed) != 0;
    for (std::size_t r = 0; r < n; ++r) {
      const cplx v = m(static_cast<Eigen::Index>(r), col);
      row_sums[r] += added ? v : -v;
    }
    cplx prod{1.0, 0.0};
    for (const auto& s : row_sums) prod *= s;
    const auto cardinality = static_cast<std::size_t>(std::popcount(gray));
    total += ((n - cardinality) % 2 == 0) ? prod : -prod;
    previous = gray;
  }
  return total;
}

inline cplx lu_determinant(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::size_mismatch, "determinant of a non-square matrix");
  if (m.rows() == 0) return {1.0, 0.0};
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

/// Literal permutation sum; refuses N above `cap` (use amplitude_fast there).
inline cplx amplitude_permsum(const ElementaryKet& bra, const ElementaryKet& ket,
                              std::size_t cap = kDefaultPermutationCap) {
  require_compatible(bra, ket);
  if (bra.size() > cap)
    throw Error(ErrorCode::above_cap, "permutation sum over " + std::to_string(bra.size()) +
                                          " particles exceeds cap " + std::to_string(cap));
  return permutation_sum(overlap_matrix(bra, ket), bra.statistics());
}

inline cplx amplitude_fast(const ElementaryKet& bra, const ElementaryKet& ket) {
  const OverlapMatrix m = overlap_matrix(bra, ket);
  switch (m.rows()) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) + static_cast<double>(eta(bra.statistics())) * m(0, 1) * m(1, 0);
    default:
      return bra.statistics() == Statistics::boson ? ryser_permanent(m) : lu_determinant(m);
  }
}

inline cplx amplitude(const ElementaryKet& bra, const ElementaryKet& ket) { return amplitude_fast(bra, ket); }

/// <Psi|Psi> for an elementary ket; round-off negatives clamp to zero.
inline double norm_sq(const ElementaryKet& ket) { return std::max(0.0, amplitude(ket, ket).real()); }

}  // namespace islocc
