// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file slocc.hpp
 * @brief Projection of an N-particle ensemble onto "one particle per
 *        operational region" and the resulting distributed state.
 *
 * Computational basis ordering: the spin of region k is bit (N-1-k) of the
 * basis index, up = 0, down = 1. For two regions this gives
 * {up up, up down, down up, down down}; the X-state formulas in
 * entangle.hpp rely on it.
 */

#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "islocc/mixedstate.hpp"

namespace islocc {

class OperationalRegionSet {
 public:
  explicit OperationalRegionSet(std::vector<std::string> regions) : regions_(std::move(regions)) {
    if (regions_.empty()) throw Error(ErrorCode::invalid_argument, "no operational regions");
    std::unordered_set<std::string> seen;
    for (const auto& r : regions_)
      if (!seen.insert(r).second) throw Error(ErrorCode::invalid_argument, "duplicate region '" + r + "'");
  }

  static OperationalRegionSet lr() { return OperationalRegionSet({"L", "R"}); }

  std::size_t size() const noexcept { return regions_.size(); }
  const std::vector<std::string>& regions() const noexcept { return regions_; }

  std::vector<std::size_t> modes_in(const ModeBasis& basis) const {
    std::vector<std::size_t> out;
    out.reserve(regions_.size());
    for (const auto& r : regions_) out.push_back(basis.require(r));
    return out;
  }

 private:
  std::vector<std::string> regions_;
};

inline Spin computational_spin(std::size_t n, std::size_t index, std::size_t region) noexcept {
  return ((index >> (n - 1 - region)) & 1U) != 0 ? Spin::down : Spin::up;
}

/// |R_1 tau_1, ..., R_N tau_N> for the given computational index.
inline ElementaryKet computational_ket(const OperationalRegionSet& regions, const BasisPtr& basis, std::size_t index,
                                       Statistics statistics) {
  const auto modes = regions.modes_in(*basis);
  const std::size_t n = modes.size();
  std::vector<SingleParticleState> particles;
  particles.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    particles.push_back(SingleParticleState(basis, {{slot_of(modes[k], computational_spin(n, index, k)), cplx{1.0, 0.0}}}));
  return ElementaryKet(std::move(particles), statistics);
}

/// Normalized distributed state after detection of one particle per region.
struct ProjectedDensityMatrix {
  Eigen::MatrixXcd matrix;
  double probability = 0.0;
  std::size_t regions = 0;

  Eigen::Index dim() const noexcept { return matrix.rows(); }
};

inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kEigenvalueClamp = 1e-10;

namespace detail {

struct RawProjection {
  Eigen::MatrixXcd matrix;  // Pi rho Pi in the computational basis, unnormalized
  double trace = 0.0;
};

inline RawProjection raw_projection(const MixedState& m, const OperationalRegionSet& regions) {
  const std::size_t n = m.particle_count();
  if (regions.size() != n)
    throw Error(ErrorCode::size_mismatch, std::to_string(n) + " particles but " + std::to_string(regions.size()) +
                                              " operational regions");
  if (n > 16) throw Error(ErrorCode::above_cap, "projection limited to 16 regions");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  std::vector<ElementaryKet> kets;
  kets.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i)
    kets.push_back(computational_ket(regions, m.basis(), static_cast<std::size_t>(i), m.statistics()));

  RawProjection out{Eigen::MatrixXcd::Zero(dim, dim), 0.0};
  Eigen::VectorXcd v(dim);
  for (const auto& member : m.members()) {
    if (member.weight == 0.0) continue;
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = overlap(kets[static_cast<std::size_t>(i)], member.state);
    out.matrix.noalias() += member.weight * v * v.adjoint();
  }
  out.trace = out.matrix.trace().real();
  return out;
}

// Hermitian part, with round-off negative eigenvalues clamped to zero and the
// trace restored to one.
inline Eigen::MatrixXcd clamp_to_density(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -kEigenvalueClamp)
    throw Error(ErrorCode::not_positive, "projected matrix has eigenvalue " + std::to_string(ev.minCoeff()));
  if (ev.minCoeff() >= 0.0) return h;
  const Eigen::VectorXd clamped = ev.cwiseMax(0.0);
  Eigen::MatrixXcd rebuilt = es.eigenvectors() * clamped.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  rebuilt = 0.5 * (rebuilt + rebuilt.adjoint());
  return rebuilt / rebuilt.trace().real();
}

}  // namespace detail

/// rho_R = Pi rho Pi / Tr(Pi rho), with P = Tr(Pi rho) / Tr(rho).
inline ProjectedDensityMatrix project(const MixedState& m, const OperationalRegionSet& regions) {
  auto raw = detail::raw_projection(m, regions);
  const double total = mixed_trace(m);
  const double probability = raw.trace / total;
  if (!(probability > kProbabilityFloor))
    throw Error(ErrorCode::zero_probability, "state is never detected one particle per region");
  return {detail::clamp_to_density(raw.matrix / raw.trace), probability, regions.size()};
}

inline double slocc_probability(const MixedState& m, const OperationalRegionSet& regions) {
  const auto raw = detail::raw_projection(m, regions);
  const double probability = raw.trace / mixed_trace(m);
  if (!(probability > kProbabilityFloor))
    throw Error(ErrorCode::zero_probability, "state is never detected one particle per region");
  return probability;
}

}  // namespace islocc
