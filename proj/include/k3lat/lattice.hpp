#pragma once

// Rank-2 even lattices of signature (1,1): admission, the quadratic form,
// representability of small values and primitive-basis completion.

#include "k3lat/integer.hpp"
#include "k3lat/pell.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

/// The input matrix violates one of the standing hypotheses.
class AdmissionError : public Error {
 public:
  using Error::Error;
};

/// A precondition of a lattice-level construction does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Coordinates (m, n) of m*h1 + n*h2 in the fixed basis.
struct LatticeVector {
  Integer m;
  Integer n;

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  bool is_zero() const { return m == 0 && n == 0; }
  bool primitive() const { return gcd(m, n) == 1; }
  Vec2 column() const { return {m, n}; }
  static LatticeVector from(const Vec2& v) { return {v.x, v.y}; }
};

inline LatticeVector operator*(const Integer& k, const LatticeVector& v) { return {k * v.m, k * v.n}; }
inline LatticeVector operator*(const Matrix2& a, const LatticeVector& v) {
  return LatticeVector::from(a * v.column());
}

/// The Gram matrix [[2a, b], [b, 2c]] of an even lattice of signature (1,1).
/// Only admit() constructs one.
class GramMatrix {
 public:
  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }

  Matrix2 matrix() const { return {2 * a_, b_, b_, 2 * c_}; }
  /// det of the stored matrix, 4ac - b^2 (negative).
  Integer discriminant() const { return 4 * a_ * c_ - b_ * b_; }
  /// r = -discr = b^2 - 4ac > 0.
  Integer r() const { return b_ * b_ - 4 * a_ * c_; }
  bool quartic_normalized() const { return a_ == 2; }
  /// gcd(a, b, c); the form is a multiple of a primitive one when this exceeds 1.
  Integer content() const { return gcd(gcd(a_, b_), c_); }

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  GramMatrix(Integer a, Integer b, Integer c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}
  friend GramMatrix admit(const Matrix2& q);

  Integer a_;
  Integer b_;
  Integer c_;
};

inline GramMatrix admit(const Matrix2& q) {
  if (!q.symmetric()) {
    throw AdmissionError("Gram matrix is not symmetric: entries " + to_string(q.m01) + " and " +
                         to_string(q.m10) + " differ");
  }
  if (q.m00 % 2 != 0 || q.m11 % 2 != 0) {
    throw AdmissionError("lattice is not even: diagonal entries " + to_string(q.m00) + ", " +
                         to_string(q.m11) + " must both be even");
  }
  const Integer det = q.det();
  if (det == 0) throw AdmissionError("lattice is degenerate: discr = 0");
  if (det > 0) {
    throw AdmissionError("signature is not (1,1): discr = " + to_string(det) +
                         " > 0 (definite form)");
  }
  return GramMatrix(q.m00 / 2, q.m01, q.m11 / 2);
}

/// Bilinear pairing u^T Q v.
inline Integer pairing(const GramMatrix& g, const LatticeVector& u, const LatticeVector& v) {
  return 2 * g.a() * u.m * v.m + g.b() * (u.m * v.n + u.n * v.m) + 2 * g.c() * u.n * v.n;
}

/// v^T Q v; always even.
inline Integer evaluate(const GramMatrix& g, const LatticeVector& v) {
  return 2 * g.a() * v.m * v.m + 2 * g.b() * v.m * v.n + 2 * g.c() * v.n * v.n;
}

/// Exhaustive scan of |m|, |n| <= bound excluding the zero vector. Order:
/// |n| ascending, n ascending, |m| ascending, positive m first.
inline std::optional<LatticeVector> brute_force_represents(const GramMatrix& g,
                                                           const Integer& value, long bound) {
  if (bound < 1) throw Error("brute_force_represents: bound must be positive");
  for (long abs_n = 0; abs_n <= bound; ++abs_n) {
    const std::vector<long> ns = abs_n == 0 ? std::vector<long>{0} : std::vector<long>{-abs_n, abs_n};
    for (long n : ns) {
      for (long abs_m = 0; abs_m <= bound; ++abs_m) {
        const std::vector<long> ms =
            abs_m == 0 ? std::vector<long>{0} : std::vector<long>{abs_m, -abs_m};
        for (long m : ms) {
          if (m == 0 && n == 0) continue;
          const LatticeVector v{m, n};
          if (evaluate(g, v) == value) return v;
        }
      }
    }
  }
  return std::nullopt;
}

/// A unimodular change of basis: rows of `matrix` are the new basis vectors.
struct BasisChange {
  Matrix2 matrix;
  Matrix2 transformed;  // A Q A^T
};

/// Completes a primitive v to a basis {v, w} with det = 1. The second row
/// (w1, w2) is chosen with 0 <= w1 < |v.m| (or (-sign(v.n), 0) when v.m = 0).
inline BasisChange complete_primitive_to_basis(const GramMatrix& g, const LatticeVector& v) {
  if (!v.primitive()) {
    throw HypothesisError("vector (" + to_string(v.m) + ", " + to_string(v.n) +
                          ") is not primitive: gcd = " + to_string(gcd(v.m, v.n)));
  }
  Matrix2 a;
  if (v.m == 0) {
    a = {0, v.n, -Integer(sign(v.n)), 0};
  } else {
    // m*w2 - n*w1 = 1  <=>  w1 = -n^{-1} (mod |m|).
    const ExtendedGcd e = extended_gcd(v.m, v.n);  // m x + n y = 1
    const Integer w1 = floor_mod(-e.y, abs(v.m));
    const Integer w2 = (1 + v.n * w1) / v.m;
    a = {v.m, v.n, w1, w2};
  }
  if (a.det() != 1) throw InvariantFailure("basis completion produced det != 1");
  const Matrix2 t = a * g.matrix() * a.transpose();
  if (t.det() != g.matrix().det()) throw InvariantFailure("basis change altered the determinant");
  return {a, t};
}

enum class RepresentMode { paper_criterion, exact };

inline const char* mode_name(RepresentMode mode) {
  return mode == RepresentMode::exact ? "exact" : "paper-criterion";
}

/// Outcome of a representability query. A "yes" carries a lattice vector when
/// one was constructed; paper-criterion answers for -2 carry the Pell
/// solution instead. A "no" carries the reasoning in `certificate`.
struct Representation {
  bool represented = false;
  std::optional<LatticeVector> witness;
  std::optional<pell::PellSolution> pell_witness;
  std::optional<pell::Decision> pell_decision;
  std::string method;
  std::vector<std::string> certificate;
};

namespace detail {

/// Nonzero isotropic vector of a form with square r.
inline LatticeVector isotropic_vector(const GramMatrix& g, const Integer& root) {
  if (g.a() == 0) return {1, 0};
  if (g.c() == 0) return {0, 1};
  // 2a m^2 + 2b m n + 2c n^2 = 0 at m/n = (-b + root) / (2a).
  Integer m = -g.b() + root;
  Integer n = 2 * g.a();
  const Integer d = gcd(m, n);
  return {m / d, n / d};
}

inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out;
  const Integer an = abs(n);
  for (Integer d = 1; d * d <= an; ++d) {
    if (an % d == 0) {
      out.push_back(d);
      if (d * d != an) out.push_back(an / d);
    }
  }
  return out;
}

inline bool witness_less(const LatticeVector& u, const LatticeVector& v) {
  const Integer su = std::max(abs(u.m), abs(u.n));
  const Integer sv = std::max(abs(v.m), abs(v.n));
  if (su != sv) return su < sv;
  if (u.n != v.n) return u.n < v.n;
  return u.m > v.m;
}

/// Exact representability when r = root^2 > 0 and value != 0: the form
/// factors, so the solutions come from finitely many factor pairs.
inline std::optional<LatticeVector> represents_square_case(const GramMatrix& g,
                                                           const Integer& value,
                                                           const Integer& root) {
  std::optional<LatticeVector> best;
  auto consider = [&](const LatticeVector& v) {
    if (evaluate(g, v) != value) throw InvariantFailure("square-case witness is wrong");
    if (!best || witness_less(v, *best)) best = v;
  };
  if (g.a() == 0 && g.c() == 0) {
    // 2 b m n = value.
    if (value % (2 * g.b()) != 0) return std::nullopt;
    const Integer prod = value / (2 * g.b());
    for (const Integer& d : divisors(prod)) {
      for (const Integer& s : {Integer(1), Integer(-1)}) consider({s * d, prod / (s * d)});
    }
    return best;
  }
  // Orient so the leading coefficient is nonzero: with A = a (or c after swapping),
  // 2A * value = (d - root n)(d + root n), d = 2A m + b n.
  const bool swapped = g.a() == 0;
  const Integer lead = swapped ? g.c() : g.a();
  const Integer n2 = 2 * lead * value;
  for (const Integer& d : divisors(n2)) {
    for (const Integer& s : {Integer(1), Integer(-1)}) {
      const Integer u = s * d;
      const Integer w = n2 / u;
      if ((w - u) % (2 * root) != 0 || (u + w) % 2 != 0) continue;
      const Integer n = (w - u) / (2 * root);
      const Integer dd = (u + w) / 2;
      if ((dd - g.b() * n) % (2 * lead) != 0) continue;
      const Integer m = (dd - g.b() * n) / (2 * lead);
      consider(swapped ? LatticeVector{n, m} : LatticeVector{m, n});
    }
  }
  return best;
}

}  // namespace detail

/// Does the lattice represent `value` by a nonzero vector?
///
/// paper-criterion: value 0 <=> r is a square; value -2 <=> d^2 - r n^2 = -8
/// is solvable (the congruence 4 | d - b n is not checked).
/// exact: every class of d^2 - r n^2 = 2a*value is followed around its unit
/// orbit modulo 2|a| until the congruence d = b n (mod 2a) holds or the orbit
/// closes; the answer is a vector witness or an exhaustion certificate.
inline Representation represents(const GramMatrix& g, const Integer& value, RepresentMode mode) {
  Representation out;
  out.method = mode_name(mode);
  const Integer r = g.r();
  const auto root = pell::is_perfect_square(r);

  if (mode == RepresentMode::paper_criterion) {
    if (value == 0) {
      out.represented = root.has_value();
      if (root) {
        out.witness = detail::isotropic_vector(g, *root);
      } else {
        out.certificate.push_back("r = " + to_string(r) + " is not a perfect square");
      }
      return out;
    }
    if (value != -2) throw Error("paper-criterion mode only answers the values 0 and -2");
    if (root) {
      // d^2 - root^2 n^2 = -8 has finitely many solutions.
      for (const Integer& d : detail::divisors(8)) {
        for (const Integer& s : {Integer(1), Integer(-1)}) {
          const Integer u = s * d, w = Integer(-8) / u;
          if (*root != 0 && (w - u) % (2 * *root) == 0 && (u + w) % 2 == 0) {
            const Integer n = (w - u) / (2 * *root);
            out.represented = true;
            out.pell_witness = pell::make_solution(r, (u + w) / 2, n, -8);
            return out;
          }
        }
      }
      out.certificate.push_back("factor pairs of -8 give no (d, n)");
      return out;
    }
    auto decision = pell::solvable(r, -8);
    out.represented = decision.solvable;
    if (decision.solution) out.pell_witness = decision.solution;
    if (!decision.solvable) {
      out.certificate.push_back("d^2 - " + to_string(r) + " n^2 = -8 has no integer solution (" +
                                decision.certificate.method + ")");
    }
    out.pell_decision = std::move(decision);
    return out;
  }

  if (value % 2 != 0) {
    out.certificate.push_back("the lattice is even; odd values are never represented");
    return out;
  }
  if (value == 0) {
    if (root) {
      out.represented = true;
      out.witness = detail::isotropic_vector(g, *root);
    } else {
      out.certificate.push_back("r = " + to_string(r) +
                                " is not a square; d^2 = r n^2 forces d = n = 0");
    }
    return out;
  }
  if (root) {
    out.witness = detail::represents_square_case(g, value, *root);
    out.represented = out.witness.has_value();
    if (!out.represented) out.certificate.push_back("no factor pair of 2a*value yields a vector");
    return out;
  }

  // r non-square, so a != 0.
  const Integer two_a = 2 * g.a();
  const Integer modulus = abs(two_a);
  const Integer n_rhs = two_a * value;
  const pell::Units units = pell::fundamental_units(r);
  const Integer& t = units.plus_one.x;
  const Integer& u = units.plus_one.y;
  const auto reps = pell::fundamental_solutions(r, n_rhs, units);

  out.certificate.push_back("classes of d^2 - " + to_string(r) + " n^2 = " + to_string(n_rhs) +
                            ": " + std::to_string(reps.size()));
  std::optional<LatticeVector> best;
  for (const Vec2& rep : reps) {
    for (const Vec2& start : {rep, Vec2{-rep.x, rep.y}}) {
      for (const Integer& dir : {u, Integer(-u)}) {
        Vec2 cur = start;
        std::set<std::pair<Integer, Integer>> seen;
        std::size_t steps = 0;
        while (seen.emplace(floor_mod(cur.x, modulus), floor_mod(cur.y, modulus)).second) {
          if ((cur.x - g.b() * cur.y) % two_a == 0) {
            const LatticeVector v{(cur.x - g.b() * cur.y) / two_a, cur.y};
            if (evaluate(g, v) != value) throw InvariantFailure("orbit witness is wrong");
            if (!best || detail::witness_less(v, *best)) best = v;
            break;
          }
          cur = pell::apply_unit(t, dir, r, cur);
          ++steps;
        }
        if (!best) {
          out.certificate.push_back("class (" + to_string(start.x) + ", " + to_string(start.y) +
                                    "): orbit closes mod " + to_string(modulus) + " after " +
                                    std::to_string(steps) + " steps without d = b n (mod 2a)");
        }
      }
    }
  }
  out.represented = best.has_value();
  out.witness = best;
  if (out.represented) out.certificate.clear();
  return out;
}

}  // namespace k3lat
