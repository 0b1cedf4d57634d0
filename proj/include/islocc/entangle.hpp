// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file entangle.hpp
 * @brief Two-qubit entanglement and CHSH nonlocality of a distributed state.
 *
 * Wootters concurrence from the eigenvalues of rho * rho~, entanglement of
 * formation, and the Horodecki maximal CHSH value
 *
 *   B = 2 sqrt(u_1 + u_2),  u_1 >= u_2 >= u_3 eigenvalues of T^T T,
 *
 * with T_ij = Tr(rho sigma_i (x) sigma_j). For X-shaped matrices T is block
 * diagonal and B has the closed form
 *
 *   B = 2 sqrt(Q^2 + max(P^2, D^2)),
 *   P = r11 + r44 - r22 - r33,  Q = 2(|r14| + |r23|),  D = 2 | |r14| - |r23| |.
 *
 * The single-branch expression 2 sqrt(P^2 + Q^2) is reported separately as
 * `bell_pq`; it is the optimum only when P^2 >= D^2.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "islocc/detail/math.hpp"
#include "islocc/slocc.hpp"

namespace islocc {

using Matrix4cd = Eigen::Matrix4cd;

namespace pauli {

inline Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
inline Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}
inline Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

/// a (x) b with the first factor on the more significant index bit.
inline Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

inline Matrix4cd as_two_qubit(const ProjectedDensityMatrix& rho) {
  if (rho.matrix.rows() != 4 || rho.matrix.cols() != 4)
    throw Error(ErrorCode::size_mismatch, "two-qubit metrics need a 4x4 density matrix");
  return rho.matrix;
}

/// rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)
inline Matrix4cd spin_flip(const Matrix4cd& rho) {
  const Matrix4cd yy = kron(pauli::y(), pauli::y());
  return yy * rho.conjugate() * yy;
}
inline Matrix4cd spin_flip(const ProjectedDensityMatrix& rho) { return spin_flip(as_two_qubit(rho)); }

struct WoottersResult {
  double concurrence = 0.0;
  std::array<double, 4> lambdas{};  // clamped to >= 0, descending
  bool hermitian_fallback = false;
};

inline constexpr double kWoottersResidual = 1e-8;

namespace detail {

inline std::array<double, 4> sorted_desc(const Eigen::Vector4d& v) {
  std::array<double, 4> out{v(0), v(1), v(2), v(3)};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Eigenvalues of sqrt(rho) rho~ sqrt(rho); same spectrum as rho rho~, but
// Hermitian.
inline Eigen::Vector4d wootters_hermitian(const Matrix4cd& rho, const Matrix4cd& flipped) {
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(0.5 * (rho + rho.adjoint()));
  const Eigen::Vector4d roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4cd sqrt_rho = es.eigenvectors() * roots.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  Matrix4cd m = sqrt_rho * flipped * sqrt_rho;
  m = 0.5 * (m + m.adjoint());
  return Eigen::SelfAdjointEigenSolver<Matrix4cd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace detail

/// Real parts of the eigenvalues of rho rho~, descending, before clamping.
inline std::array<double, 4> wootters_eigenvalues(const Matrix4cd& rho) {
  const Matrix4cd r = rho * spin_flip(rho);
  Eigen::ComplexEigenSolver<Matrix4cd> ces(r);
  return detail::sorted_desc(ces.eigenvalues().real());
}

inline WoottersResult concurrence(const Matrix4cd& rho) {
  const Matrix4cd flipped = spin_flip(rho);
  const Matrix4cd r = rho * flipped;
  Eigen::ComplexEigenSolver<Matrix4cd> ces(r);

  WoottersResult out;
  Eigen::Vector4d ev;
  bool ok = ces.info() == Eigen::Success;
  if (ok) {
    const auto& values = ces.eigenvalues();
    const Matrix4cd residual = r * ces.eigenvectors() - ces.eigenvectors() * values.asDiagonal();
    const double scale = std::max(1.0, r.norm());
    ok = residual.norm() <= kWoottersResidual * scale && values.imag().cwiseAbs().maxCoeff() <= kWoottersResidual;
    ev = values.real();
  }
  if (!ok) {
    ev = detail::wootters_hermitian(rho, flipped);
    out.hermitian_fallback = true;
  }
  out.lambdas = detail::sorted_desc(ev.cwiseMax(0.0));
  const double c = std::sqrt(out.lambdas[0]) - std::sqrt(out.lambdas[1]) - std::sqrt(out.lambdas[2]) -
                   std::sqrt(out.lambdas[3]);
  out.concurrence = std::clamp(c, 0.0, 1.0);
  return out;
}
inline WoottersResult concurrence(const ProjectedDensityMatrix& rho) { return concurrence(as_two_qubit(rho)); }

/// E_f = h((1 + sqrt(1 - C^2)) / 2)
inline double eof(double c) {
  if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) throw Error(ErrorCode::invalid_argument, "concurrence outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return detail::binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

/// T_ij = Tr(rho sigma_i (x) sigma_j), i, j in {x, y, z}
inline Eigen::Matrix3d correlation_matrix(const Matrix4cd& rho) {
  const std::array<Eigen::Matrix2cd, 3> s{pauli::x(), pauli::y(), pauli::z()};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (rho * kron(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)])).trace().real();
  return t;
}

struct BellResult {
  double bell = 0.0;
  double p = std::numeric_limits<double>::quiet_NaN();
  double q = std::numeric_limits<double>::quiet_NaN();
  double pq_branch = std::numeric_limits<double>::quiet_NaN();
};

inline BellResult bell_horodecki(const Matrix4cd& rho) {
  const Eigen::Matrix3d t = correlation_matrix(rho);
  const Eigen::Matrix3d u = t.transpose() * t;
  const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(u, Eigen::EigenvaluesOnly).eigenvalues();
  BellResult out;
  out.bell = 2.0 * std::sqrt(std::max(0.0, ev(1) + ev(2)));
  return out;
}
inline BellResult bell_horodecki(const ProjectedDensityMatrix& rho) { return bell_horodecki(as_two_qubit(rho)); }

inline constexpr double kXShapeTolerance = 1e-10;

inline bool is_x_shaped(const Matrix4cd& rho, double tol = kXShapeTolerance) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && std::abs(rho(i, j)) > tol) return false;
  return true;
}

inline BellResult bell_xstate(const Matrix4cd& rho) {
  if (!is_x_shaped(rho)) throw Error(ErrorCode::not_x_shaped, "matrix has entries off the X pattern");
  BellResult out;
  out.p = (rho(0, 0) + rho(3, 3) - rho(1, 1) - rho(2, 2)).real();
  out.q = 2.0 * (std::abs(rho(0, 3)) + std::abs(rho(1, 2)));
  const double d = 2.0 * std::abs(std::abs(rho(0, 3)) - std::abs(rho(1, 2)));
  out.bell = 2.0 * std::sqrt(out.q * out.q + std::max(out.p * out.p, d * d));
  out.pq_branch = 2.0 * std::sqrt(out.p * out.p + out.q * out.q);
  return out;
}
inline BellResult bell_xstate(const ProjectedDensityMatrix& rho) { return bell_xstate(as_two_qubit(rho)); }

struct EntanglementReport {
  double concurrence = 0.0;
  std::array<double, 4> lambdas{};
  double eof = 0.0;
  double bell = 0.0;                                         // Horodecki optimum
  double bell_p = std::numeric_limits<double>::quiet_NaN();  // X-state diagnostics, NaN if not X-shaped
  double bell_q = std::numeric_limits<double>::quiet_NaN();
  double bell_pq = std::numeric_limits<double>::quiet_NaN();
  bool x_shaped = false;
};

inline EntanglementReport analyze(const Matrix4cd& rho) {
  EntanglementReport out;
  const auto w = concurrence(rho);
  out.concurrence = w.concurrence;
  out.lambdas = w.lambdas;
  out.eof = eof(w.concurrence);
  out.bell = bell_horodecki(rho).bell;
  out.x_shaped = is_x_shaped(rho);
  if (out.x_shaped) {
    const auto x = bell_xstate(rho);
    out.bell_p = x.p;
    out.bell_q = x.q;
    out.bell_pq = x.pq_branch;
  }
  return out;
}
inline EntanglementReport analyze(const ProjectedDensityMatrix& rho) { return analyze(as_two_qubit(rho)); }

}  // namespace islocc
