#pragma once

// Integer isometries of a rank-2 lattice. Vectors are columns, isometries act
// by left multiplication and M is an isometry iff M^T Q M = Q.

#include "k3lat/integer.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/pell.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3lat {

class NotAnIsometry : public Error {
 public:
  using Error::Error;
};

/// The requested construction would leave the integers or fails its own check.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class Isometry {
 public:
  const Matrix2& matrix() const { return matrix_; }
  const GramMatrix& gram() const { return gram_; }
  Integer det() const { return matrix_.det(); }
  bool proper() const { return det() == 1; }

  friend bool operator==(const Isometry& x, const Isometry& y) {
    return x.gram_ == y.gram_ && x.matrix_ == y.matrix_;
  }

 private:
  Isometry(GramMatrix g, Matrix2 m) : gram_(std::move(g)), matrix_(std::move(m)) {}
  friend Isometry verify(const GramMatrix& g, const Matrix2& m);

  GramMatrix gram_;
  Matrix2 matrix_;
};

inline Isometry verify(const GramMatrix& g, const Matrix2& m) {
  const Matrix2 q = g.matrix();
  const Matrix2 diff = m.transpose() * q * m - q;
  if (!diff.is_zero()) {
    const char* where = diff.m00 != 0 ? "(1,1)" : diff.m01 != 0 ? "(1,2)" : diff.m10 != 0 ? "(2,1)" : "(2,2)";
    const Integer& value = diff.m00 != 0 ? diff.m00 : diff.m01 != 0 ? diff.m01 : diff.m10 != 0 ? diff.m10 : diff.m11;
    throw NotAnIsometry(std::string("M^T Q M - Q has entry ") + where + " = " + to_string(value));
  }
  const Integer d = m.det();
  if (d != 1 && d != -1) throw InvariantFailure("isometry with det " + to_string(d));
  return Isometry(g, m);
}

inline Isometry compose(const Isometry& x, const Isometry& y) {
  if (!(x.gram() == y.gram())) throw Error("compose: isometries of different lattices");
  return verify(x.gram(), x.matrix() * y.matrix());
}

inline Isometry inverse(const Isometry& x) {
  return verify(x.gram(), x.matrix().unimodular_inverse());
}

/// x^k for any integer k.
inline Isometry power(const Isometry& x, long long k) {
  const Matrix2 base = k >= 0 ? x.matrix() : x.matrix().unimodular_inverse();
  const auto e = static_cast<unsigned long long>(k >= 0 ? k : -k);
  return verify(x.gram(), power(base, e));
}

inline Isometry negate(const Isometry& x) { return verify(x.gram(), -x.matrix()); }

/// A solution of alpha^2 - (b/c) alpha beta + (a/c) beta^2 = 1, stored
/// cleared of denominators: c alpha^2 - b alpha beta + a beta^2 = c.
struct RowSolution {
  Integer alpha;
  Integer beta;

  friend bool operator==(const RowSolution&, const RowSolution&) = default;
};

inline bool satisfies_row_equation(const GramMatrix& g, const RowSolution& s) {
  return g.c() * s.alpha * s.alpha - g.b() * s.alpha * s.beta + g.a() * s.beta * s.beta == g.c();
}

// ---------------------------------------------------------------------------
// Discriminant group A(L) = Z^2 / Q Z^2.

/// U * Q * V = diag(d1, d2), U and V unimodular, d1 | d2, d_i >= 0.
struct SmithForm {
  Matrix2 u;
  Matrix2 v;
  Integer d1;
  Integer d2;
};

inline SmithForm smith_normal_form(const Matrix2& q) {
  Matrix2 u = Matrix2::identity(), v = Matrix2::identity(), a = q;
  auto swap_rows = [&] {
    a = Matrix2{0, 1, 1, 0} * a;
    u = Matrix2{0, 1, 1, 0} * u;
  };
  auto swap_cols = [&] {
    a = a * Matrix2{0, 1, 1, 0};
    v = v * Matrix2{0, 1, 1, 0};
  };
  for (;;) {
    // Move the smallest nonzero entry to (0,0).
    const Integer* best = nullptr;
    int pos = -1;
    const Integer* entries[4] = {&a.m00, &a.m01, &a.m10, &a.m11};
    for (int i = 0; i < 4; ++i) {
      if (*entries[i] != 0 && (best == nullptr || abs(*entries[i]) < abs(*best))) {
        best = entries[i];
        pos = i;
      }
    }
    if (best == nullptr) break;
    if (pos == 1 || pos == 3) swap_cols();
    if (pos == 2 || pos == 3) swap_rows();

    const Integer p = a.m00;
    const Integer qr = a.m10 / p;  // row2 -= qr * row1
    const Matrix2 er{1, 0, -qr, 1};
    a = er * a;
    u = er * u;
    const Integer qc = a.m01 / p;  // col2 -= qc * col1
    const Matrix2 ec{1, -qc, 0, 1};
    a = a * ec;
    v = v * ec;
    if (a.m10 != 0 || a.m01 != 0) continue;
    if (a.m11 % a.m00 != 0) {
      // Fold row 2 into row 1 and reduce again so that d1 | d2.
      const Matrix2 add{1, 1, 0, 1};
      a = add * a;
      u = add * u;
      continue;
    }
    break;
  }
  if (a.m00 < 0) {
    a = Matrix2{-1, 0, 0, 1} * a;
    u = Matrix2{-1, 0, 0, 1} * u;
  }
  if (a.m11 < 0) {
    a = Matrix2{1, 0, 0, -1} * a;
    u = Matrix2{1, 0, 0, -1} * u;
  }
  if (!(u * q * v == Matrix2{a.m00, 0, 0, a.m11})) throw InvariantFailure("Smith form check failed");
  return {u, v, a.m00, a.m11};
}

enum class ActionVerdict { plus_identity, minus_identity, other };

inline const char* verdict_name(ActionVerdict v) {
  switch (v) {
    case ActionVerdict::plus_identity: return "plus-identity";
    case ActionVerdict::minus_identity: return "minus-identity";
    case ActionVerdict::other: return "other";
  }
  return "other";
}

/// (M - eps I) Q^{-1} written as numerator / denominator with
/// numerator = (M - eps I) adj(Q) and denominator = det Q.
struct ScaledMatrix {
  Matrix2 numerator;
  Integer denominator;

  bool integral() const { return numerator.divisible_by(denominator); }
  Matrix2 value() const { return numerator.exact_div(denominator); }
};

struct DiscriminantAction {
  ActionVerdict verdict = ActionVerdict::other;
  ScaledMatrix plus_test;   // (M - I) Q^{-1}
  ScaledMatrix minus_test;  // (M + I) Q^{-1}
  SmithForm smith;
  Matrix2 generator_images;  // U M^{-T} U^{-1}: column j is the image of generator j
};

inline ScaledMatrix lemma_matrix(const Isometry& iso, int eps) {
  const Matrix2 q = iso.gram().matrix();
  return {(iso.matrix() - Integer(eps) * Matrix2::identity()) * q.adjugate(), q.det()};
}

/// eps-identity test on A(L) through its Smith decomposition.
inline bool smith_acts_as(const SmithForm& s, const Matrix2& images, int eps) {
  const Integer* d[2] = {&s.d1, &s.d2};
  const Integer entries[2][2] = {{images.m00, images.m01}, {images.m10, images.m11}};
  for (int i = 0; i < 2; ++i) {
    if (*d[i] == 1) continue;
    for (int j = 0; j < 2; ++j) {
      if (*d[j] == 1) continue;
      const Integer expected = i == j ? Integer(eps) : Integer(0);
      if (floor_mod(entries[i][j] - expected, *d[i]) != 0) return false;
    }
  }
  return true;
}

inline DiscriminantAction discriminant_action(const Isometry& iso) {
  DiscriminantAction out;
  out.plus_test = lemma_matrix(iso, 1);
  out.minus_test = lemma_matrix(iso, -1);
  const bool plus = out.plus_test.integral();
  const bool minus = out.minus_test.integral();
  out.verdict = plus ? ActionVerdict::plus_identity
                     : minus ? ActionVerdict::minus_identity : ActionVerdict::other;

  // Second route: g acts on Z^2/QZ^2 by M^{-T}; in Smith coordinates y = U x.
  const Matrix2 q = iso.gram().matrix();
  out.smith = smith_normal_form(q);
  const Matrix2 inv_t = iso.matrix().unimodular_inverse().transpose();
  out.generator_images = out.smith.u * inv_t * out.smith.u.unimodular_inverse();
  const bool snf_plus = smith_acts_as(out.smith, out.generator_images, 1);
  const bool snf_minus = smith_acts_as(out.smith, out.generator_images, -1);
  if (snf_plus != plus || snf_minus != minus) {
    throw InvariantFailure("discriminant action: integrality test and Smith-form action disagree");
  }
  return out;
}

/// Order of the induced map on A(L), and the least power acting as -Id
/// (if any power does before the order is reached).
struct DiscriminantOrder {
  unsigned long long order = 0;
  std::optional<unsigned long long> minus_exponent;
};

inline DiscriminantOrder discriminant_order(const Isometry& iso,
                                            unsigned long long limit = 10'000'000) {
  const Matrix2 q = iso.gram().matrix();
  const Integer det = q.det();
  const Integer modulus = abs(det);
  const Matrix2 adj = q.adjugate();
  const Matrix2 base = iso.matrix().mod(modulus);
  Matrix2 cur = base;
  DiscriminantOrder out;
  for (unsigned long long k = 1; k <= limit; ++k) {
    if (((cur - Matrix2::identity()) * adj).divisible_by(det)) {
      out.order = k;
      return out;
    }
    if (!out.minus_exponent && ((cur + Matrix2::identity()) * adj).divisible_by(det)) {
      out.minus_exponent = k;
    }
    cur = (cur * base).mod(modulus);
  }
  throw Error("discriminant order exceeds " + std::to_string(limit));
}

// ---------------------------------------------------------------------------
// Generators.

struct GeneratorH {
  Isometry h;
  RowSolution first;  // (alpha_1, beta_1), the top row of h
  pell::PellSolution pell;    // minimal positive solution of x^2 - r' y^2 = 4
  Integer content;            // gcd(a, b, c); r' = r / content^2
};

/// The infinite-order generator built from the minimal solution (x, y) of
/// x^2 - r y^2 = 4 (with the form divided by its content):
/// h = [[(x + b y)/2, c y], [-a y, (x - b y)/2]].
inline GeneratorH generator_h(const GramMatrix& g) {
  if (pell::is_perfect_square(g.r())) {
    throw HypothesisError("r = " + to_string(g.r()) + " is a perfect square");
  }
  const Integer e = g.content();
  const Integer a = g.a() / e, b = g.b() / e, c = g.c() / e;
  const Integer r = g.r() / (e * e);
  const pell::PellSolution sol = pell::minimal_solution(r, 4);
  const Integer& x = sol.x;
  const Integer& y = sol.y;
  const Matrix2 m{(x + b * y) / 2, c * y, -a * y, (x - b * y) / 2};
  Isometry h = verify(g, m);
  if (!h.proper()) throw InvariantFailure("generator h has det -1");
  RowSolution first{m.m00, m.m01};
  if (!satisfies_row_equation(g, first)) throw InvariantFailure("h's top row fails the row equation");
  return {std::move(h), first, sol, e};
}

struct PowerWithRecursion {
  Isometry power;
  RowSolution coefficients;  // (alpha_k, beta_k)
};

/// h^k computed by matrix powering and by the (alpha_k, beta_k) recursion;
/// the two must agree.
inline PowerWithRecursion power_with_recursion(const GeneratorH& gen, unsigned k) {
  if (k == 0) throw Error("power_with_recursion: k must be positive");
  const GramMatrix& g = gen.h.gram();
  const Integer e = gen.content;
  const Integer a = g.a() / e, b = g.b() / e, c = g.c() / e;
  const Integer& alpha1 = gen.first.alpha;
  const Integer& beta1 = gen.first.beta;
  // (a/c) beta_1 and (b/c) beta_1 are integers since c | beta_1.
  const Integer a_beta1 = a * (beta1 / c);
  const Integer b_beta1 = b * (beta1 / c);
  Integer alpha = alpha1, beta = beta1;
  for (unsigned i = 2; i <= k; ++i) {
    Integer next_alpha = alpha1 * alpha - a_beta1 * beta;
    Integer next_beta = alpha1 * beta + alpha * beta1 - b_beta1 * beta;
    alpha = std::move(next_alpha);
    beta = std::move(next_beta);
  }
  if (beta % c != 0) throw InvariantFailure("beta_k not divisible by c");
  const Matrix2 from_recursion{alpha, beta, -a * (beta / c), alpha - b * (beta / c)};
  Isometry by_power = power(gen.h, k);
  if (!(by_power.matrix() == from_recursion)) {
    throw InvariantFailure("h^" + std::to_string(k) + ": matrix power and recursion disagree");
  }
  return {std::move(by_power), {alpha, beta}};
}

/// The involution [[alpha, beta], [-(b/c) alpha + (a/c) beta, -alpha]].
inline Isometry involution_from_solution(const GramMatrix& g, const RowSolution& s) {
  if (g.c() == 0) throw ConstructionError("c = 0: the involution form is undefined");
  if (!satisfies_row_equation(g, s)) {
    throw ConstructionError("(" + to_string(s.alpha) + ", " + to_string(s.beta) +
                            ") does not satisfy the row equation");
  }
  const Integer num = g.a() * s.beta - g.b() * s.alpha;
  if (num % g.c() != 0) {
    throw ConstructionError("(" + to_string(s.alpha) + ", " + to_string(s.beta) +
                            ") gives a non-integral entry " + to_string(num) + "/" +
                            to_string(g.c()));
  }
  const Matrix2 m{s.alpha, s.beta, num / g.c(), -s.alpha};
  try {
    Isometry iso = verify(g, m);
    if (!(m * m == Matrix2::identity())) throw ConstructionError("matrix does not square to I");
    return iso;
  } catch (const NotAnIsometry& e) {
    throw ConstructionError(std::string("not an isometry: ") + e.what());
  }
}

/// Rank of the eps-eigenlattice of M (0, 1 or 2).
inline int eigenspace_rank(const Isometry& iso, int eps) {
  const Matrix2 k = iso.matrix() - Integer(eps) * Matrix2::identity();
  if (k.is_zero()) return 2;
  return k.det() == 0 ? 1 : 0;
}

/// Primitive generator of ker(M - eps I) when that kernel has rank 1,
/// normalized so the first nonzero coordinate is positive.
inline std::optional<LatticeVector> fixed_primitive_vector(const Isometry& iso, int eps) {
  if (eps != 1 && eps != -1) throw Error("eigenvalue must be +1 or -1");
  if (eigenspace_rank(iso, eps) != 1) return std::nullopt;
  const Matrix2 k = iso.matrix() - Integer(eps) * Matrix2::identity();
  const bool top = k.m00 != 0 || k.m01 != 0;
  const Integer p = top ? k.m00 : k.m10;
  const Integer q = top ? k.m01 : k.m11;
  const Integer d = gcd(p, q);
  LatticeVector v{q / d, -p / d};
  if (v.m < 0 || (v.m == 0 && v.n < 0)) v = Integer(-1) * v;
  if (!(iso.matrix() * v == Integer(eps) * v)) throw InvariantFailure("kernel vector is not fixed");
  return v;
}

/// Whether M keeps `reference` in its component of the positive cone.
inline bool positive_cone_preserving(const Isometry& iso, const LatticeVector& reference) {
  if (evaluate(iso.gram(), reference) <= 0) {
    throw HypothesisError("reference vector does not have positive square");
  }
  return pairing(iso.gram(), iso.matrix() * reference, reference) > 0;
}

}  // namespace k3lat
