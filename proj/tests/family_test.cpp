#include "k3lat/family.hpp"

#include <gtest/gtest.h>

using namespace k3lat;

TEST(Instantiate, EightMatchesPrintedMatrices) {
  const auto f = instantiate(8);
  EXPECT_EQ(f.r, 248);
  EXPECT_EQ(f.sigma.matrix(), (Matrix2{127, 1008, -16, -127}));
  EXPECT_EQ(f.h.matrix(), (Matrix2{127, 8, -16, -1}));
  EXPECT_EQ(f.g_star.matrix(), (Matrix2{16001, 1008, -2016, -127}));
  EXPECT_EQ(f.tau.matrix(), (Matrix2{2015999, 16000992, -254000, -2015999}));
}

TEST(Instantiate, RejectsSmallN) {
  EXPECT_THROW(instantiate(1), HypothesisError);
  EXPECT_THROW(instantiate(-3), HypothesisError);
}

TEST(Instantiate, IdentitiesTwoToThirty) {
  for (long n = 2; n <= 30; ++n) {
    const auto f = instantiate(n);
    const Integer N = n;
    EXPECT_EQ(f.gram.matrix().det(), 8 - 4 * N * N);
    EXPECT_EQ(f.r, 4 * N * N - 8);
    EXPECT_EQ(f.sigma.matrix() * f.sigma.matrix(), Matrix2::identity());
    EXPECT_EQ(f.tau.matrix() * f.tau.matrix(), Matrix2::identity());
    EXPECT_EQ(f.h.det(), 1);
    EXPECT_EQ(f.sigma.det(), -1);
    EXPECT_EQ(f.tau.det(), -1);
    EXPECT_EQ(f.tau.matrix() * f.sigma.matrix(), f.g_star.matrix());
    EXPECT_EQ(generator_h(f.gram).h.matrix(), f.h.matrix());
    const Integer x = 2 * N * N - 2;
    EXPECT_EQ(x * x - f.r * N * N, 4);
    const auto v = fixed_primitive_vector(f.sigma, 1);
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, (LatticeVector{N, -1}));
    EXPECT_EQ(evaluate(f.gram, {-N, 1}), 2);
    EXPECT_EQ(f.sigma.matrix() * (LatticeVector{-N, 1}), (LatticeVector{-N, 1}));
  }
}

TEST(Instantiate, LargeNDoesNotOverflow) {
  const auto f = instantiate(1000);
  EXPECT_EQ(f.tau.matrix().m01, 8 * pow(Integer(1000), 7) - 24 * pow(Integer(1000), 5) +
                                    20 * pow(Integer(1000), 3) - 4000);
  EXPECT_EQ(f.tau.matrix() * f.tau.matrix(), Matrix2::identity());
}

TEST(FamilyVerdict, EightAllClausesPass) {
  const auto v = verify_main_theorem(8);
  EXPECT_TRUE(v.hypothesis_holds);
  for (const auto& c : v.clauses) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(v.all_passed());
  EXPECT_EQ(v.minimal.x, 126);
  EXPECT_EQ(v.minimal.y, 8);
  EXPECT_EQ(v.gizatullin.global, GlobalVerdict::no_nontrivial_automorphism_induced);
}

TEST(FamilyVerdict, NineDecidedByPell) {
  const auto v = verify_main_theorem(9);
  EXPECT_EQ(v.instance.r, 316);
  EXPECT_EQ(v.minus_eight.solvable, pell::solvable(316, -8).solvable);
  EXPECT_FALSE(v.minus_eight.solvable);
  EXPECT_TRUE(v.all_passed());
}

TEST(FamilyVerdict, SevenFailsOnlyTheThreshold) {
  const auto v = verify_main_theorem(7);
  EXPECT_TRUE(v.hypothesis_holds);
  for (const auto& c : v.clauses) {
    if (c.name == "gizatullin") {
      EXPECT_FALSE(c.passed);
      EXPECT_EQ(c.detail, "inconclusive: r=188 ≤ 225");
    } else {
      EXPECT_TRUE(c.passed) << c.name;
    }
  }
}

TEST(FamilyVerdict, TwoFailsTheHypothesis) {
  const auto v = verify_main_theorem(2);
  EXPECT_FALSE(v.hypothesis_holds);
  EXPECT_TRUE(v.minus_eight.solvable);
  EXPECT_TRUE(v.minus_two.represented);
  EXPECT_FALSE(v.all_passed());
}

TEST(FamilyVerdict, EightToThirtyPass) {
  for (long n = 8; n <= 30; ++n) {
    const auto v = verify_main_theorem(n);
    EXPECT_TRUE(v.all_passed()) << n;
  }
}
