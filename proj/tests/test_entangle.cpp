// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "islocc/entangle.hpp"

using namespace islocc;

namespace {

Matrix4cd projector(const Eigen::Vector4cd& v) { return v * v.adjoint() / v.squaredNorm(); }

Eigen::Vector4cd singlet() {
  Eigen::Vector4cd v(0.0, 1.0, -1.0, 0.0);
  return v / std::sqrt(2.0);
}

// p |Psi-><Psi-| + (1 - p) I/4
Matrix4cd werner(double p) { return p * projector(singlet()) + (1.0 - p) * Matrix4cd::Identity() / 4.0; }

Matrix4cd random_density(std::mt19937_64& rng, int rank) {
  std::normal_distribution<double> g;
  Matrix4cd m = Matrix4cd::Zero();
  for (int k = 0; k < rank; ++k) {
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) v(i) = cplx(g(rng), g(rng));
    m += v * v.adjoint();
  }
  return m / m.trace().real();
}

}  // namespace

TEST(Concurrence, BellAndProductStates) {
  EXPECT_NEAR(concurrence(projector(singlet())).concurrence, 1.0, 1e-12);
  EXPECT_NEAR(concurrence(projector(Eigen::Vector4cd(1, 0, 0, 1))).concurrence, 1.0, 1e-12);
  EXPECT_NEAR(concurrence(projector(Eigen::Vector4cd(1, 0, 0, 0))).concurrence, 0.0, 1e-12);
  EXPECT_NEAR(concurrence(Matrix4cd(Matrix4cd::Identity() / 4.0)).concurrence, 0.0, 1e-12);
}

TEST(Concurrence, TextbookWerner) {
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0})
    EXPECT_NEAR(concurrence(werner(p)).concurrence, std::max(0.0, (3.0 * p - 1.0) / 2.0), 1e-10) << p;
}

// rho rho~ has rank one here; the three zero eigenvalues come back as
// round-off of order 1e-16, and their square roots cost ~1e-8 in C.
TEST(Concurrence, PureStateFormula) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) v(i) = cplx(g(rng), g(rng));
    v.normalize();
    EXPECT_NEAR(concurrence(projector(v)).concurrence, 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)), 1e-7);
  }
}

TEST(Concurrence, HermitianFormAgreesWithGeneralSolver) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const Matrix4cd rho = random_density(rng, 1 + k % 4);
    const auto w = concurrence(rho);
    const Eigen::Vector4d h = detail::wootters_hermitian(rho, spin_flip(rho));
    const auto hs = detail::sorted_desc(h.cwiseMax(0.0));
    const double ch = std::max(0.0, std::sqrt(hs[0]) - std::sqrt(hs[1]) - std::sqrt(hs[2]) - std::sqrt(hs[3]));
    EXPECT_NEAR(w.concurrence, ch, 1e-7);
    EXPECT_GE(w.lambdas[0], w.lambdas[1]);
  }
}

TEST(Eof, ValuesAndDomain) {
  EXPECT_NEAR(eof(0.5), 0.35457890266526988420, 1e-14);
  EXPECT_EQ(eof(0.0), 0.0);
  EXPECT_NEAR(eof(1.0), 1.0, 1e-15);
  EXPECT_THROW(eof(1.1), Error);
  EXPECT_THROW(eof(-0.1), Error);
  EXPECT_THROW(eof(NAN), Error);
}

TEST(Bell, HorodeckiOnKnownStates) {
  EXPECT_NEAR(bell_horodecki(projector(singlet())).bell, 2.0 * std::sqrt(2.0), 1e-12);
  for (double p : {0.0, 0.5, 0.9}) EXPECT_NEAR(bell_horodecki(werner(p)).bell, 2.0 * std::sqrt(2.0) * p, 1e-12);
  EXPECT_NEAR(bell_horodecki(projector(Eigen::Vector4cd(1, 0, 0, 0))).bell, 2.0, 1e-12);
}

TEST(Bell, CorrelationMatrixOfSinglet) {
  const auto t = correlation_matrix(projector(singlet()));
  EXPECT_LT((t + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Bell, XStateBranches) {
  // |r14| much larger than |r23| and P small: the D branch wins.
  Matrix4cd rho = Matrix4cd::Zero();
  rho(0, 0) = rho(3, 3) = 0.25;
  rho(1, 1) = rho(2, 2) = 0.25;
  rho(0, 3) = rho(3, 0) = 0.24;
  const auto x = bell_xstate(rho);
  EXPECT_NEAR(x.bell, bell_horodecki(rho).bell, 1e-12);
  EXPECT_LT(x.pq_branch, x.bell);
  EXPECT_NEAR(x.p, 0.0, 1e-15);
  EXPECT_NEAR(x.q, 0.48, 1e-15);
  // P dominant: both expressions agree.
  const auto s = bell_xstate(werner(0.7));
  EXPECT_NEAR(s.bell, s.pq_branch, 1e-12);
  EXPECT_NEAR(s.bell, bell_horodecki(werner(0.7)).bell, 1e-12);
}

TEST(Bell, XStateRejectsOtherShapes) {
  Matrix4cd rho = Matrix4cd::Identity() / 4.0;
  rho(0, 1) = rho(1, 0) = 0.1;
  EXPECT_FALSE(is_x_shaped(rho));
  try {
    bell_xstate(rho);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_x_shaped);
  }
  const auto r = analyze(rho);
  EXPECT_FALSE(r.x_shaped);
  EXPECT_TRUE(std::isnan(r.bell_pq));
}

TEST(Bell, XStateAgreesWithHorodeckiOnRandomXStates) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 200; ++k) {
    const Matrix4cd full = random_density(rng, 4);
    Matrix4cd x = Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) {
      x(i, i) = full(i, i);
      x(i, 3 - i) = full(i, 3 - i);
    }
    EXPECT_NEAR(bell_xstate(x).bell, bell_horodecki(x).bell, 1e-10);
  }
}

TEST(Analyze, CombinesMetrics) {
  const auto r = analyze(werner(0.8));
  EXPECT_NEAR(r.concurrence, 0.7, 1e-10);
  EXPECT_NEAR(r.eof, eof(0.7), 1e-12);
  EXPECT_TRUE(r.x_shaped);
  EXPECT_NEAR(r.bell, 1.6 * std::sqrt(2.0), 1e-12);
}
