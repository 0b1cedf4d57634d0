// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "islocc/mixedstate.hpp"

using namespace islocc;

namespace {

SingleParticleState random_state(const BasisPtr& b, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<SingleParticleState::Entry> e;
  for (std::size_t s = 0; s < b->slot_count(); ++s) e.push_back({s, cplx{g(rng), g(rng)}});
  return SingleParticleState(b, e);
}

}  // namespace

TEST(Overlap, MatchesTensorSpaceOracle) {
  std::mt19937_64 rng(3);
  const auto b = make_basis({"L", "R", "C"});
  for (auto s : {Statistics::boson, Statistics::fermion})
    for (int k = 0; k < 50; ++k) {
      const auto a1 = random_state(b, rng), a2 = random_state(b, rng);
      const auto c1 = random_state(b, rng), c2 = random_state(b, rng);
      const PureNState bra({{cplx{0.3, 0.1}, ElementaryKet({a1, a2}, s)}, {cplx{-0.2, 0}, ElementaryKet({c1, a1}, s)}});
      const PureNState ket({{cplx{1, 0}, ElementaryKet({c1, c2}, s)}});
      const oracle::Vec dbra = cplx{0.3, 0.1} * oracle::sym(a1.dense(), a2.dense(), eta(s)) +
                        cplx{-0.2, 0} * oracle::sym(c1.dense(), a1.dense(), eta(s));
      const oracle::Vec dket = oracle::sym(c1.dense(), c2.dense(), eta(s));
      EXPECT_NEAR(std::abs(overlap(bra, ket) - dbra.dot(dket)), 0.0, 1e-11);
    }
}

TEST(SymmetrizedBasis, CountsAndNorms) {
  const auto b = lr_basis();  // 4 slots
  const auto bos = symmetrized_basis(b, 2, Statistics::boson);
  const auto fer = symmetrized_basis(b, 2, Statistics::fermion);
  EXPECT_EQ(bos.elements.size(), 10u);
  EXPECT_EQ(fer.elements.size(), 6u);
  int doubles = 0;
  for (std::size_t i = 0; i < bos.elements.size(); ++i) {
    EXPECT_NEAR(norm_sq(bos.elements[i]), bos.norms_sq[i], 1e-14);
    doubles += bos.norms_sq[i] == 2.0 ? 1 : 0;
  }
  EXPECT_EQ(doubles, 4);
  for (std::size_t i = 0; i < fer.elements.size(); ++i) EXPECT_NEAR(norm_sq(fer.elements[i]), 1.0, 1e-14);
  EXPECT_EQ(symmetrized_basis(b, 3, Statistics::boson).norms_sq.front(), 6.0);
  EXPECT_TRUE(symmetrized_basis(b, 5, Statistics::fermion).elements.empty());
}

TEST(MixedTrace, MatchesTensorSpaceOracle) {
  std::mt19937_64 rng(4);
  const auto b = make_basis({"L", "R", "C"});
  for (auto s : {Statistics::boson, Statistics::fermion})
    for (int k = 0; k < 20; ++k) {
      const auto a1 = random_state(b, rng), a2 = random_state(b, rng), c1 = random_state(b, rng);
      const MixedState m({{0.25, PureNState(ElementaryKet({a1, a2}, s))}, {0.75, PureNState(ElementaryKet({c1, a2}, s))}});
      const std::vector<oracle::Weighted> ens{{0.25, oracle::sym(a1.dense(), a2.dense(), eta(s))},
                                              {0.75, oracle::sym(c1.dense(), a2.dense(), eta(s))}};
      EXPECT_NEAR(mixed_trace(m), oracle::trace(ens), 1e-10 * oracle::trace(ens));
    }
}

TEST(MixedTrace, SupportRestrictionAndZeroTrace) {
  const auto b = make_basis({"L", "R", "C"});
  const auto l_up = SingleParticleState::localized(b, "L", Spin::up);
  const auto r_dn = SingleParticleState::localized(b, "R", Spin::down);
  const MixedState m(PureNState(ElementaryKet({l_up, r_dn}, Statistics::fermion)));
  EXPECT_EQ(support_slots(m), (std::vector<std::size_t>{0, 3}));
  EXPECT_NEAR(mixed_trace(m), 1.0, 1e-15);
  const MixedState dead(PureNState(ElementaryKet({l_up, l_up}, Statistics::fermion)));
  try {
    mixed_trace(dead);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_trace);
  }
}

TEST(MixedState, Validation) {
  const auto k = ElementaryKet({SingleParticleState::localized(lr_basis(), "L", Spin::up)}, Statistics::boson);
  const auto kf = ElementaryKet({SingleParticleState::localized(lr_basis(), "L", Spin::up)}, Statistics::fermion);
  EXPECT_THROW(MixedState({{-0.1, PureNState(k)}}), Error);
  EXPECT_THROW(MixedState({{0.0, PureNState(k)}}), Error);
  EXPECT_THROW(MixedState({{0.5, PureNState(k)}, {0.5, PureNState(kf)}}), Error);
  EXPECT_THROW(PureNState(std::vector<PureNState::Term>{}), Error);
}

TEST(MatrixElement, HermitianInArguments) {
  std::mt19937_64 rng(5);
  const auto b = lr_basis();
  const auto s = Statistics::boson;
  const MixedState m({{0.4, PureNState(ElementaryKet({random_state(b, rng), random_state(b, rng)}, s))},
                      {0.6, PureNState(ElementaryKet({random_state(b, rng), random_state(b, rng)}, s))}});
  const ElementaryKet x({random_state(b, rng), random_state(b, rng)}, s);
  const ElementaryKet y({random_state(b, rng), random_state(b, rng)}, s);
  EXPECT_NEAR(std::abs(matrix_element(x, m, y) - std::conj(matrix_element(y, m, x))), 0.0, 1e-12);
  EXPECT_GE(matrix_element(x, m, x).real(), 0.0);
}
