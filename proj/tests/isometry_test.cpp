#include "k3lat/isometry.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <random>

using namespace k3lat;
using Rational = boost::multiprecision::cpp_rational;

namespace {

GramMatrix q(long n) { return admit(Matrix2{4, 2 * n, 2 * n, 2}); }

const Matrix2 kSigma8{127, 1008, -16, -127};
const Matrix2 kTau8{2015999, 16000992, -254000, -2015999};
const Matrix2 kH8{127, 8, -16, -1};
const Matrix2 kGStar8{16001, 1008, -2016, -127};

// (M - eps I) Q^{-1} with rationals, independent of the adjugate route.
std::array<Rational, 4> rational_lemma(const Matrix2& m, const Matrix2& qm, int eps) {
  const Rational det = Rational(qm.det());
  const Rational qi[4] = {Rational(qm.m11) / det, Rational(-qm.m01) / det,
                          Rational(-qm.m10) / det, Rational(qm.m00) / det};
  const Rational a[4] = {Rational(m.m00 - eps), Rational(m.m01), Rational(m.m10),
                         Rational(m.m11 - eps)};
  return {a[0] * qi[0] + a[1] * qi[2], a[0] * qi[1] + a[1] * qi[3], a[2] * qi[0] + a[3] * qi[2],
          a[2] * qi[1] + a[3] * qi[3]};
}

}  // namespace

TEST(Verify, Examples) {
  EXPECT_NO_THROW(verify(q(8), kSigma8));
  EXPECT_NO_THROW(verify(q(8), Matrix2::identity()));
  try {
    verify(q(8), Matrix2{1, 1, 0, 1});
    FAIL();
  } catch (const NotAnIsometry& e) {
    EXPECT_NE(std::string(e.what()).find("(1,2) = 4"), std::string::npos) << e.what();
  }
}

TEST(Verify, UnimodularConjugates) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-4, 4);
  const auto g = q(8);
  int tested = 0;
  while (tested < 300) {
    const Matrix2 a{d(rng), d(rng), d(rng), d(rng)};
    if (a.det() != 1 && a.det() != -1) continue;
    // In basis rows of A the Gram matrix is A Q A^T and an isometry M becomes A^{-T} M A^T.
    const GramMatrix h = admit(a * g.matrix() * a.transpose());
    const Matrix2 conj = a.unimodular_inverse().transpose() * kSigma8 * a.transpose();
    EXPECT_NO_THROW(verify(h, conj));
    ++tested;
  }
}

TEST(DiscriminantAction, SigmaAtEight) {
  const auto act = discriminant_action(verify(q(8), kSigma8));
  EXPECT_EQ(act.verdict, ActionVerdict::minus_identity);
  ASSERT_TRUE(act.minus_test.integral());
  EXPECT_EQ(act.minus_test.value(), (Matrix2{64, -8, -8, 1}));
  EXPECT_FALSE(act.plus_test.integral());
}

TEST(DiscriminantAction, HAtEight) {
  const auto act = discriminant_action(verify(q(8), kH8));
  EXPECT_EQ(act.verdict, ActionVerdict::other);
  EXPECT_EQ(act.plus_test.numerator, (Matrix2{124, -1984, 0, 248}));
  EXPECT_EQ(act.plus_test.denominator, -248);
  EXPECT_FALSE(act.plus_test.integral());
  EXPECT_FALSE(act.minus_test.integral());
  const auto r = rational_lemma(kH8, q(8).matrix(), 1);
  EXPECT_EQ(r[0], Rational(-1, 2));
}

TEST(DiscriminantAction, GStarAtEight) {
  const auto act = discriminant_action(verify(q(8), kGStar8));
  EXPECT_EQ(act.verdict, ActionVerdict::plus_identity);
  EXPECT_EQ(act.plus_test.value(), (Matrix2{-64, 1016, 8, -128}));
}

TEST(DiscriminantAction, SmithForm) {
  const auto s = smith_normal_form(q(8).matrix());
  EXPECT_EQ(s.d1 * s.d2, 248);
  EXPECT_EQ(s.d2 % s.d1, 0);
  EXPECT_EQ(s.d1, 2);
  EXPECT_EQ(s.d2, 124);
  for (int a = -9; a <= 9; ++a) {
    for (int b = -9; b <= 9; ++b) {
      for (int c = -9; c <= 9; ++c) {
        const Matrix2 m{2 * a, b, b, 2 * c};
        if (m.det() == 0) continue;
        const auto f = smith_normal_form(m);
        EXPECT_EQ(f.u * m * f.v, (Matrix2{f.d1, 0, 0, f.d2}));
        EXPECT_EQ(f.d1 * f.d2, abs(m.det()));
        EXPECT_EQ(f.d2 % f.d1, 0);
      }
    }
  }
}

TEST(DiscriminantAction, RoutesAgreeOnPowers) {
  // discriminant_action throws if the two routes disagree.
  for (long n = 2; n <= 20; ++n) {
    const auto gen = generator_h(q(n));
    for (long long k = -6; k <= 6; ++k) {
      const Isometry p = power(gen.h, k);
      EXPECT_NO_THROW(discriminant_action(p));
      EXPECT_NO_THROW(discriminant_action(negate(p)));
    }
  }
  for (int a = -6; a <= 6; ++a) {
    for (int b = -6; b <= 6; ++b) {
      for (int c = -6; c <= 6; ++c) {
        const int r = b * b - 4 * a * c;
        if (r <= 0 || pell::is_perfect_square(r)) continue;
        const auto g = admit(Matrix2{2 * a, b, b, 2 * c});
        const auto gen = generator_h(g);
        for (long long k = 1; k <= 4; ++k) {
          const auto p = power(gen.h, k);
          const auto act = discriminant_action(p);
          const auto rl = rational_lemma(p.matrix(), g.matrix(), 1);
          bool integral = true;
          for (const auto& x : rl) integral = integral && denominator(x) == 1;
          EXPECT_EQ(integral, act.plus_test.integral());
        }
      }
    }
  }
}

TEST(DiscriminantOrder, HAtEight) {
  const auto o = discriminant_order(verify(q(8), kH8));
  EXPECT_EQ(o.order, 2u);
  EXPECT_FALSE(o.minus_exponent);
}

TEST(GeneratorH, Examples) {
  const auto g8 = generator_h(q(8));
  EXPECT_EQ(g8.h.matrix(), kH8);
  EXPECT_EQ(g8.first, (RowSolution{127, 8}));
  EXPECT_EQ(2 * g8.first.alpha - 16 * g8.first.beta, 126);
  const auto g2 = generator_h(q(2));
  EXPECT_EQ(g2.h.matrix(), (Matrix2{7, 2, -4, -1}));
  EXPECT_THROW(generator_h(admit(Matrix2{0, 3, 3, 0})), HypothesisError);
}

TEST(GeneratorH, NonPrimitiveFormUsesPrimitivePart) {
  const auto g = admit(Matrix2{8, 32, 32, 4});  // 2 * Q_8
  const auto gen = generator_h(g);
  EXPECT_EQ(gen.content, 2);
  EXPECT_EQ(gen.h.matrix(), kH8);
}

TEST(PowerWithRecursion, Examples) {
  const auto gen = generator_h(q(8));
  const auto p2 = power_with_recursion(gen, 2);
  EXPECT_EQ(p2.power.matrix(), kGStar8);
  EXPECT_EQ(p2.coefficients, (RowSolution{16001, 1008}));
  EXPECT_EQ(power_with_recursion(gen, 1).power.matrix(), kH8);
  EXPECT_THROW(power_with_recursion(gen, 0), Error);
}

TEST(PowerWithRecursion, FamilyAndRandomForms) {
  for (long n = 2; n <= 20; ++n) {
    const auto gen = generator_h(q(n));
    for (unsigned k = 1; k <= 20; ++k) {
      const auto p = power_with_recursion(gen, k);
      EXPECT_TRUE(satisfies_row_equation(q(n), p.coefficients));
    }
  }
  for (int a = -5; a <= 5; ++a) {
    for (int b = -5; b <= 5; ++b) {
      for (int c = -5; c <= 5; ++c) {
        const int r = b * b - 4 * a * c;
        if (r <= 0 || pell::is_perfect_square(r)) continue;
        const auto gen = generator_h(admit(Matrix2{2 * a, b, b, 2 * c}));
        for (unsigned k = 1; k <= 8; ++k) EXPECT_NO_THROW(power_with_recursion(gen, k));
      }
    }
  }
}

TEST(RowEquation, ClosedUnderH) {
  const auto g = q(8);
  const auto gen = generator_h(g);
  for (long long k = -10; k <= 10; ++k) {
    const Matrix2 m = power(gen.h, k).matrix();
    EXPECT_TRUE(satisfies_row_equation(g, {m.m00, m.m01})) << k;
    EXPECT_TRUE(satisfies_row_equation(g, {-m.m00, -m.m01})) << k;
  }
}

TEST(Involution, Examples) {
  const auto g = q(8);
  EXPECT_EQ(involution_from_solution(g, {127, 1008}).matrix(), kSigma8);
  EXPECT_EQ(involution_from_solution(g, {1, 0}).matrix(), (Matrix2{1, 0, -16, -1}));
  EXPECT_EQ(involution_from_solution(g, {2015999, 16000992}).matrix(), kTau8);
  EXPECT_THROW(involution_from_solution(g, {2, 1}), ConstructionError);
}

TEST(Involution, SquaresToIdentity) {
  for (long n = 2; n <= 20; ++n) {
    const auto g = q(n);
    const auto gen = generator_h(g);
    for (long long k = -8; k <= 8; ++k) {
      const Matrix2 m = power(gen.h, k).matrix();
      for (const Integer s : {1, -1}) {
        const auto inv = involution_from_solution(g, {s * m.m00, s * m.m01});
        EXPECT_EQ(inv.matrix() * inv.matrix(), Matrix2::identity());
        EXPECT_EQ(inv.det(), -1);
      }
    }
  }
}

TEST(FixedVector, Examples) {
  const auto g = q(8);
  const auto s = fixed_primitive_vector(verify(g, kSigma8), 1);
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, (LatticeVector{8, -1}));
  EXPECT_EQ(evaluate(g, *s), 2);
  const auto t = fixed_primitive_vector(verify(g, kTau8), 1);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (LatticeVector{1008, -127}));
  EXPECT_EQ(evaluate(g, *t), 2);
  EXPECT_FALSE(fixed_primitive_vector(verify(g, Matrix2::identity()), -1));
  const auto minus = fixed_primitive_vector(verify(g, kSigma8), -1);
  ASSERT_TRUE(minus);
  EXPECT_EQ(kSigma8 * *minus, Integer(-1) * *minus);
  EXPECT_TRUE(minus->primitive());
}

TEST(PositiveCone, Examples) {
  const auto g = q(8);
  EXPECT_TRUE(positive_cone_preserving(verify(g, kSigma8), {1, 0}));
  EXPECT_FALSE(positive_cone_preserving(verify(g, -Matrix2::identity()), {1, 0}));
  EXPECT_TRUE(positive_cone_preserving(verify(g, kH8), {1, 0}));
  EXPECT_EQ(pairing(g, kSigma8 * LatticeVector{1, 0}, {1, 0}), 252);
  EXPECT_THROW(positive_cone_preserving(verify(g, kH8), {1, -4}), HypothesisError);
  EXPECT_NO_THROW(positive_cone_preserving(verify(g, kH8), {0, 1}));
  EXPECT_THROW(positive_cone_preserving(verify(admit(Matrix2{4, 16, 16, -2}), Matrix2::identity()),
                                        {0, 1}),
               HypothesisError);
}

TEST(Compose, PowersAndInverse) {
  const auto g = q(8);
  const auto h = verify(g, kH8);
  EXPECT_EQ(compose(h, h).matrix(), kGStar8);
  EXPECT_EQ(compose(h, inverse(h)).matrix(), Matrix2::identity());
  EXPECT_EQ(power(h, -2).matrix(), inverse(verify(g, kGStar8)).matrix());
  const auto tau = verify(g, kTau8);
  const auto sigma = verify(g, kSigma8);
  EXPECT_EQ(compose(tau, sigma).matrix(), kGStar8);
  EXPECT_EQ(compose(sigma, tau).matrix(), inverse(verify(g, kGStar8)).matrix());
}
