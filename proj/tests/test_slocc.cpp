// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "islocc/slocc.hpp"

using namespace islocc;

namespace {

SingleParticleState random_state(const BasisPtr& b, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<SingleParticleState::Entry> e;
  for (std::size_t s = 0; s < b->slot_count(); ++s) e.push_back({s, cplx{g(rng), g(rng)}});
  return SingleParticleState(b, e);
}

}  // namespace

TEST(ComputationalKet, OrderingIsUpUpUpDownDownUpDownDown) {
  const auto regions = OperationalRegionSet::lr();
  const auto k = computational_ket(regions, lr_basis(), 1, Statistics::fermion);
  EXPECT_EQ(k.particle(0).amplitude("L", Spin::up), cplx(1, 0));
  EXPECT_EQ(k.particle(1).amplitude("R", Spin::down), cplx(1, 0));
  const auto k2 = computational_ket(regions, lr_basis(), 2, Statistics::fermion);
  EXPECT_EQ(k2.particle(0).amplitude("L", Spin::down), cplx(1, 0));
  EXPECT_EQ(k2.particle(1).amplitude("R", Spin::up), cplx(1, 0));
}

TEST(Project, MatchesTensorSpaceOracle) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  const auto b = make_basis({"L", "R", "C"});  // C leaks probability out of the regions
  const auto regions = OperationalRegionSet::lr();
  for (auto s : {Statistics::boson, Statistics::fermion})
    for (int k = 0; k < 40; ++k) {
      std::vector<MixedState::Member> members;
      std::vector<oracle::Weighted> ens;
      for (int j = 0; j < 3; ++j) {
        const auto a1 = random_state(b, rng), a2 = random_state(b, rng);
        const double w = u(rng);
        members.push_back({w, PureNState(ElementaryKet({a1, a2}, s))});
        ens.push_back({w, oracle::sym(a1.dense(), a2.dense(), eta(s))});
      }
      const MixedState m(members);
      const auto rho = project(m, regions);
      const auto ref = oracle::project_two(ens, 6, 0, 1, eta(s));
      EXPECT_LT((rho.matrix - ref.rho).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(rho.probability, ref.probability, 1e-10);
      EXPECT_NEAR(slocc_probability(m, regions), ref.probability, 1e-10);
      EXPECT_EQ(rho.regions, 2u);
    }
}

TEST(Project, DensityInvariants) {
  std::mt19937_64 rng(7);
  const auto b = lr_basis();
  for (int k = 0; k < 100; ++k) {
    const auto s = k % 2 ? Statistics::boson : Statistics::fermion;
    const MixedState m({{0.3, PureNState(ElementaryKet({random_state(b, rng), random_state(b, rng)}, s))},
                        {0.7, PureNState(ElementaryKet({random_state(b, rng), random_state(b, rng)}, s))}});
    const auto rho = project(m, OperationalRegionSet::lr());
    EXPECT_LT((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(rho.matrix.trace().real(), 1.0, 1e-12);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho.matrix).eigenvalues().minCoeff(), -1e-12);
    EXPECT_GT(rho.probability, 0.0);
    EXPECT_LE(rho.probability, 1.0 + 1e-12);
  }
}

TEST(Project, ZeroProbabilityWhenBothInOneRegion) {
  const auto b = lr_basis();
  const MixedState m(PureNState(ElementaryKet(
      {SingleParticleState::localized(b, "L", Spin::up), SingleParticleState::localized(b, "L", Spin::down)},
      Statistics::boson)));
  try {
    project(m, OperationalRegionSet::lr());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_probability);
  }
}

TEST(Project, RegionErrors) {
  const auto b = lr_basis();
  const MixedState m(PureNState(ElementaryKet({SingleParticleState::localized(b, "L", Spin::up)}, Statistics::boson)));
  EXPECT_THROW(project(m, OperationalRegionSet::lr()), Error);
  EXPECT_THROW(OperationalRegionSet({"L", "L"}), Error);
  const MixedState two(PureNState(ElementaryKet(
      {SingleParticleState::localized(b, "L", Spin::up), SingleParticleState::localized(b, "R", Spin::up)},
      Statistics::boson)));
  try {
    project(two, OperationalRegionSet({"L", "X"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::missing_mode);
  }
}

TEST(ClampToDensity, SmallNegativesClampLargeOnesThrow) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0 + 1e-12;
  m(1, 1) = -1e-12;
  const auto c = detail::clamp_to_density(m);
  EXPECT_NEAR(c(1, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(c.trace().real(), 1.0, 1e-15);
  m(1, 1) = -1e-6;
  EXPECT_THROW(detail::clamp_to_density(m), Error);
}
