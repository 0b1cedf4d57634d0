// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spstate.hpp
 * @brief Single-particle states on a finite orthonormal basis of spatial
 *        modes tensored with a two-level pseudospin.
 *
 * A single-particle basis vector is addressed by a "slot", slot = 2*mode + spin,
 * so that the two spin components of one mode are adjacent. Amplitudes are
 * stored sparsely, sorted by slot, with exact zeros dropped.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "islocc/detail/math.hpp"
#include "islocc/error.hpp"

namespace islocc {

enum class Spin : std::uint8_t { up = 0, down = 1 };

inline constexpr std::array<Spin, 2> kSpins{Spin::up, Spin::down};

constexpr std::size_t spin_index(Spin s) noexcept { return static_cast<std::size_t>(s); }
constexpr Spin flipped(Spin s) noexcept { return s == Spin::up ? Spin::down : Spin::up; }
constexpr std::size_t slot_of(std::size_t mode, Spin s) noexcept { return 2 * mode + spin_index(s); }
constexpr std::size_t mode_of_slot(std::size_t slot) noexcept { return slot / 2; }
constexpr Spin spin_of_slot(std::size_t slot) noexcept { return slot % 2 == 0 ? Spin::up : Spin::down; }

/// Ordered set of distinct spatial-mode labels. Immutable once built.
class ModeBasis {
 public:
  explicit ModeBasis(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw Error(ErrorCode::invalid_argument, "mode basis must not be empty");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw Error(ErrorCode::invalid_argument, "empty mode label");
      if (!seen.insert(l).second) throw Error(ErrorCode::invalid_argument, "duplicate mode label '" + l + "'");
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t slot_count() const noexcept { return 2 * labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t mode) const { return labels_.at(mode); }

  std::optional<std::size_t> index_of(std::string_view label) const noexcept {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::size_t require(std::string_view label) const {
    if (auto i = index_of(label)) return *i;
    throw Error(ErrorCode::missing_mode, "mode '" + std::string(label) + "' not in basis");
  }

  friend bool operator==(const ModeBasis& a, const ModeBasis& b) noexcept { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
};

using BasisPtr = std::shared_ptr<const ModeBasis>;

inline BasisPtr make_basis(std::vector<std::string> labels) {
  return std::make_shared<const ModeBasis>(std::move(labels));
}

/// The two operational regions used throughout: {"L", "R"}.
inline BasisPtr lr_basis() {
  static const BasisPtr basis = make_basis({"L", "R"});
  return basis;
}

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

inline void require_same_basis(const BasisPtr& a, const BasisPtr& b) {
  if (!same_basis(a, b)) throw Error(ErrorCode::basis_mismatch, "states live on different mode bases");
}

namespace detail {

template <class Entry>
void sort_and_merge(std::vector<Entry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().index == e.index)
      merged.back().amplitude += e.amplitude;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry& e) { return e.amplitude == cplx{0.0, 0.0}; });
  entries = std::move(merged);
}

template <class Entry>
cplx sparse_inner(const std::vector<Entry>& a, const std::vector<Entry>& b) noexcept {
  cplx sum{0.0, 0.0};
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->index < ib->index) {
      ++ia;
    } else if (ib->index < ia->index) {
      ++ib;
    } else {
      sum += std::conj(ia->amplitude) * ib->amplitude;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

}  // namespace detail

/// Spatial wave function: complex amplitudes over the modes of a basis, no spin.
class SpatialWave {
 public:
  struct Entry {
    std::size_t index;  // mode
    cplx amplitude;
  };

  SpatialWave(BasisPtr basis, std::vector<Entry> entries) : basis_(std::move(basis)), entries_(std::move(entries)) {
    if (!basis_) throw Error(ErrorCode::invalid_argument, "null basis");
    for (const auto& e : entries_)
      if (e.index >= basis_->size()) throw Error(ErrorCode::missing_mode, "mode index out of range");
    detail::sort_and_merge(entries_);
  }

  SpatialWave(BasisPtr basis, const std::vector<std::pair<std::string, cplx>>& by_label)
      : SpatialWave(basis, to_entries(*basis, by_label)) {}

  static SpatialWave localized(BasisPtr basis, std::string_view label) {
    const std::size_t m = basis->require(label);
    return SpatialWave(std::move(basis), std::vector<Entry>{{m, cplx{1.0, 0.0}}});
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  cplx amplitude(std::size_t mode) const noexcept {
    for (const auto& e : entries_)
      if (e.index == mode) return e.amplitude;
    return {0.0, 0.0};
  }
  cplx amplitude(std::string_view label) const { return amplitude(basis_->require(label)); }

  /// |<X|psi>|^2 for the mode X.
  double mode_probability(std::size_t mode) const noexcept { return std::norm(amplitude(mode)); }

  double norm_sq() const noexcept {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e.amplitude);
    return s;
  }

 private:
  static std::vector<Entry> to_entries(const ModeBasis& basis, const std::vector<std::pair<std::string, cplx>>& in) {
    std::vector<Entry> out;
    out.reserve(in.size());
    for (const auto& [label, amp] : in) out.push_back({basis.require(label), amp});
    return out;
  }

  BasisPtr basis_;
  std::vector<Entry> entries_;
};

inline cplx inner(const SpatialWave& a, const SpatialWave& b) {
  require_same_basis(a.basis(), b.basis());
  return detail::sparse_inner(a.entries(), b.entries());
}

/// |chi> = sum over (mode, spin) of amplitudes; the one-particle state of the
/// no-label formalism.
class SingleParticleState {
 public:
  struct Entry {
    std::size_t index;  // slot
    cplx amplitude;
    std::size_t mode() const noexcept { return mode_of_slot(index); }
    Spin spin() const noexcept { return spin_of_slot(index); }
  };

  SingleParticleState(BasisPtr basis, std::vector<Entry> entries)
      : basis_(std::move(basis)), entries_(std::move(entries)) {
    if (!basis_) throw Error(ErrorCode::invalid_argument, "null basis");
    for (const auto& e : entries_)
      if (e.index >= basis_->slot_count()) throw Error(ErrorCode::missing_mode, "slot index out of range");
    detail::sort_and_merge(entries_);
  }

  static SingleParticleState localized(BasisPtr basis, std::string_view label, Spin spin) {
    const std::size_t m = basis->require(label);
    return SingleParticleState(std::move(basis), std::vector<Entry>{{slot_of(m, spin), cplx{1.0, 0.0}}});
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  cplx amplitude(std::size_t mode, Spin spin) const noexcept {
    const std::size_t s = slot_of(mode, spin);
    for (const auto& e : entries_)
      if (e.index == s) return e.amplitude;
    return {0.0, 0.0};
  }
  cplx amplitude(std::string_view label, Spin spin) const { return amplitude(basis_->require(label), spin); }

  /// Probability of finding the particle in a mode, spin summed out.
  double mode_probability(std::size_t mode) const noexcept {
    return std::norm(amplitude(mode, Spin::up)) + std::norm(amplitude(mode, Spin::down));
  }

  bool has_support_on(std::size_t mode) const noexcept {
    return std::any_of(entries_.begin(), entries_.end(), [mode](const Entry& e) { return e.mode() == mode; });
  }

  double norm_sq() const noexcept {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e.amplitude);
    return s;
  }

  Eigen::VectorXcd dense() const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_->slot_count()));
    for (const auto& e : entries_) v(static_cast<Eigen::Index>(e.index)) = e.amplitude;
    return v;
  }

  /// Applies a 2x2 pseudospin operator to the component living in `mode`,
  /// leaving the other modes untouched: (|m><m| (x) op + (1 - |m><m|) (x) 1).
  SingleParticleState with_spin_operator(std::size_t mode, const Eigen::Matrix2cd& op) const {
    std::vector<Entry> out;
    out.reserve(entries_.size() + 2);
    const cplx up = amplitude(mode, Spin::up);
    const cplx down = amplitude(mode, Spin::down);
    for (const auto& e : entries_)
      if (e.mode() != mode) out.push_back(e);
    out.push_back({slot_of(mode, Spin::up), op(0, 0) * up + op(0, 1) * down});
    out.push_back({slot_of(mode, Spin::down), op(1, 0) * up + op(1, 1) * down});
    return SingleParticleState(basis_, std::move(out));
  }

 private:
  BasisPtr basis_;
  std::vector<Entry> entries_;
};

/// <a|b>, conjugate-linear in the first argument.
inline cplx inner(const SingleParticleState& a, const SingleParticleState& b) {
  require_same_basis(a.basis(), b.basis());
  return detail::sparse_inner(a.entries(), b.entries());
}

/// |psi> (x) |sigma>
inline SingleParticleState tensor(const SpatialWave& wave, Spin spin) {
  std::vector<SingleParticleState::Entry> out;
  out.reserve(wave.entries().size());
  for (const auto& e : wave.entries()) out.push_back({slot_of(e.index, spin), e.amplitude});
  return SingleParticleState(wave.basis(), std::move(out));
}

inline constexpr double kNormTolerance = 1e-12;

/// Shape of a wave peaked in L and R: l|L> + r e^{i theta}|R>.
struct PeakedShape {
  double l = 1.0;
  double r = 0.0;
  double theta = 0.0;

  /// r is fixed by normalization.
  static PeakedShape from_l(double l, double theta = 0.0) {
    return PeakedShape{l, std::sqrt(std::max(0.0, 1.0 - l * l)), theta};
  }

  void validate() const {
    if (!std::isfinite(l) || !std::isfinite(r) || !std::isfinite(theta))
      throw Error(ErrorCode::invalid_argument, "non-finite peaked parameters");
    if (l < 0.0 || r < 0.0) throw Error(ErrorCode::invalid_argument, "l and r must be non-negative");
    if (std::abs(l * l + r * r - 1.0) > kNormTolerance)
      throw Error(ErrorCode::norm_violation, "l^2 + r^2 must equal 1");
  }
};

struct PeakedParams {
  double l = 1.0;
  double r = 0.0;
  double theta = 0.0;
  Spin spin = Spin::up;

  PeakedShape shape() const noexcept { return {l, r, theta}; }
  void validate() const { shape().validate(); }
};

inline SpatialWave make_peaked_wave(const PeakedShape& shape, BasisPtr basis) {
  shape.validate();
  const std::size_t left = basis->require("L");
  const std::size_t right = basis->require("R");
  std::vector<SpatialWave::Entry> entries{{left, cplx{shape.l, 0.0}},
                                          {right, shape.r * std::polar(1.0, shape.theta)}};
  return SpatialWave(std::move(basis), std::move(entries));
}

inline SingleParticleState make_peaked(const PeakedParams& params, BasisPtr basis) {
  return tensor(make_peaked_wave(params.shape(), std::move(basis)), params.spin);
}

}  // namespace islocc
