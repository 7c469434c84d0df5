#pragma once

// Continued fractions of sqrt(r) and exact solvers for x^2 - r y^2 = N.
//
// Two independent routes produce the solution classes of the generalized
// equation: a bounded scan over 0 <= y <= B (B the classical bound derived
// from the fundamental unit) and the PQa / Lagrange-Matthews-Mollin method.
// solvable() uses the scan while B stays small and falls back to PQa when
// the unit is so large that the scan is out of reach.

#include "k3lat/integer.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace k3lat::pell {

inline constexpr unsigned long kDefaultScanLimit = 200000;

enum class SolutionTag { fundamental, power, sign_variant, particular };

inline const char* tag_name(SolutionTag tag) {
  switch (tag) {
    case SolutionTag::fundamental: return "fundamental";
    case SolutionTag::power: return "power";
    case SolutionTag::sign_variant: return "sign-variant";
    case SolutionTag::particular: return "particular";
  }
  return "particular";
}

/// A solution of x^2 - r*y^2 = rhs. The equation is checked on construction.
struct PellSolution {
  Integer r;
  Integer x;
  Integer y;
  Integer rhs;
  SolutionTag tag = SolutionTag::particular;
  unsigned power = 1;
};

inline PellSolution make_solution(const Integer& r, const Integer& x, const Integer& y,
                                  const Integer& rhs,
                                  SolutionTag tag = SolutionTag::particular,
                                  unsigned power = 1) {
  if (x * x - r * y * y != rhs) {
    throw InvariantFailure("(" + to_string(x) + ", " + to_string(y) + ") does not solve x^2 - " +
                           to_string(r) + " y^2 = " + to_string(rhs));
  }
  return {r, x, y, rhs, tag, power};
}

/// Returns the root when r is a perfect square.
inline std::optional<Integer> is_perfect_square(const Integer& r) {
  if (r < 0) throw Error("is_perfect_square: negative input");
  return exact_sqrt(r);
}

/// sqrt(r) = [a0; period, period, ...]; the period ends with 2*a0.
struct ContinuedFraction {
  Integer r;
  Integer a0;
  std::vector<Integer> period;

  std::size_t period_length() const { return period.size(); }
  /// Partial quotient a_k, k >= 0.
  const Integer& quotient(std::size_t k) const {
    return k == 0 ? a0 : period[(k - 1) % period.size()];
  }
};

inline ContinuedFraction cf_sqrt(const Integer& r) {
  if (r <= 0) throw Error("cf_sqrt: r must be positive");
  if (is_perfect_square(r)) throw Error("cf_sqrt: r = " + to_string(r) + " is a perfect square");
  ContinuedFraction cf{r, isqrt(r), {}};
  Integer m = 0, d = 1, a = cf.a0;
  const Integer end = 2 * cf.a0;
  do {
    m = d * a - m;
    d = (r - m * m) / d;
    a = (cf.a0 + m) / d;
    cf.period.push_back(a);
  } while (a != end);
  return cf;
}

struct Convergent {
  Integer p;
  Integer q;
};

/// The first `count` convergents p_k/q_k of sqrt(r).
inline std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count) {
  std::vector<Convergent> out;
  out.reserve(count);
  Integer p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (std::size_t k = 0; k < count; ++k) {
    const Integer& a = cf.quotient(k);
    Integer p = a * p_prev + p_prev2;
    Integer q = a * q_prev + q_prev2;
    p_prev2 = std::exchange(p_prev, p);
    q_prev2 = std::exchange(q_prev, q);
    out.push_back({std::move(p), std::move(q)});
  }
  return out;
}

struct Units {
  PellSolution plus_one;                   // fundamental solution of x^2 - r y^2 = 1
  std::optional<PellSolution> minus_one;   // fundamental solution of x^2 - r y^2 = -1
};

inline Units fundamental_units(const Integer& r) {
  const ContinuedFraction cf = cf_sqrt(r);
  const std::size_t l = cf.period_length();
  const Convergent c = convergents(cf, l).back();
  if (l % 2 == 0) {
    return {make_solution(r, c.p, c.q, 1, SolutionTag::fundamental), std::nullopt};
  }
  auto minus = make_solution(r, c.p, c.q, -1, SolutionTag::fundamental);
  auto plus = make_solution(r, c.p * c.p + r * c.q * c.q, 2 * c.p * c.q, 1,
                            SolutionTag::fundamental);
  return {std::move(plus), std::move(minus)};
}

/// (x, y) -> (t x + r u y, u x + t y): multiplication by t + u sqrt(r).
inline Vec2 apply_unit(const Integer& t, const Integer& u, const Integer& r, const Vec2& v) {
  return {t * v.x + r * u * v.y, u * v.x + t * v.y};
}

namespace detail {

// floor((P + sqrt(D)) / Q) with s = floor(sqrt(D)), D non-square.
inline Integer pqa_quotient(const Integer& p, const Integer& q, const Integer& s) {
  return q > 0 ? floor_div(p + s, q) : floor_div(p + s + 1, q);
}

/// Canonical member of the class of v under +-(unit)^j: minimal |y|, then
/// y >= 0, then the larger x.
inline Vec2 canonical_in_class(Vec2 v, const PellSolution& unit) {
  const Integer& r = unit.r;
  const Integer& t = unit.x;
  const Integer& u = unit.y;
  auto down = [&](const Vec2& w) { return apply_unit(t, -u, r, w); };
  auto up = [&](const Vec2& w) { return apply_unit(t, u, r, w); };
  for (;;) {
    Vec2 w = down(v);
    if (abs(w.y) < abs(v.y)) { v = std::move(w); continue; }
    w = up(v);
    if (abs(w.y) < abs(v.y)) { v = std::move(w); continue; }
    break;
  }
  auto normalize = [](Vec2 w) {
    if (w.y < 0 || (w.y == 0 && w.x < 0)) w = Integer(-1) * w;
    return w;
  };
  Vec2 best = normalize(v);
  for (const Vec2& w : {down(v), up(v)}) {
    if (abs(w.y) == abs(best.y)) {
      Vec2 n = normalize(w);
      if (n.x > best.x) best = n;
    }
  }
  return best;
}

inline bool vec_less(const Vec2& a, const Vec2& b) {
  if (a.y != b.y) return a.y < b.y;
  return a.x < b.x;
}

inline std::vector<Vec2> sorted_unique(std::vector<Vec2> v) {
  std::sort(v.begin(), v.end(), vec_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/// One canonical representative per solution class of x^2 - r y^2 = N,
/// via the PQa algorithm. r must be a positive non-square, N != 0.
inline std::vector<Vec2> fundamental_solutions(const Integer& r, const Integer& n,
                                               const Units& units) {
  if (n == 0) throw Error("fundamental_solutions: N must be nonzero");
  const Integer s = isqrt(r);
  std::vector<Vec2> out;
  for (Integer f = 1; f * f <= abs(n); ++f) {
    if (n % (f * f) != 0) continue;
    const Integer m = n / (f * f);
    const Integer am = abs(m);
    // z ranges over (-|m|/2, |m|/2] with z^2 = r (mod |m|).
    for (Integer z = -floor_div(am - 1, 2); z <= am / 2; ++z) {
      if (floor_mod(z * z - r, am) != 0) continue;
      Integer p = z, q = am;
      Integer g_prev = am, g_prev2 = -z, b_prev = 0, b_prev2 = 1;
      std::set<std::pair<Integer, Integer>> seen;
      while (seen.emplace(p, q).second) {
        const Integer a = detail::pqa_quotient(p, q, s);
        Integer g = a * g_prev + g_prev2;
        Integer b = a * b_prev + b_prev2;
        g_prev2 = std::exchange(g_prev, g);
        b_prev2 = std::exchange(b_prev, b);
        p = a * q - p;
        q = (r - p * p) / q;
        if (q == 1 || q == -1) {
          const Integer value = g_prev * g_prev - r * b_prev * b_prev;
          if (value == m) {
            out.push_back({f * g_prev, f * b_prev});
          } else if (units.minus_one) {
            const Integer& t = units.minus_one->x;
            const Integer& u = units.minus_one->y;
            out.push_back({f * (g_prev * t + b_prev * u * r), f * (g_prev * u + b_prev * t)});
          }
          break;
        }
      }
    }
  }
  for (Vec2& v : out) {
    if (v.x * v.x - r * v.y * v.y != n) {
      throw InvariantFailure("PQa produced a non-solution for r = " + to_string(r));
    }
    v = detail::canonical_in_class(v, units.plus_one);
  }
  return detail::sorted_unique(std::move(out));
}

inline std::vector<Vec2> fundamental_solutions(const Integer& r, const Integer& n) {
  return fundamental_solutions(r, n, fundamental_units(r));
}

/// Every class of x^2 - r y^2 = N has a member with 0 <= y <= this bound
/// (y > 0 when N < 0).
inline Integer nagell_bound(const Integer& n, const PellSolution& unit) {
  const Integer& t = unit.x;
  const Integer& u = unit.y;
  if (n > 0) return isqrt(u * u * n / (2 * (t + 1)));
  return isqrt(u * u * (-n) / (2 * (t - 1)));
}

/// The same class representatives as fundamental_solutions(), found by a
/// plain scan over y up to the Nagell bound.
inline std::vector<Vec2> fundamental_solutions_by_scan(const Integer& r, const Integer& n,
                                                       const Units& units) {
  const Integer bound = nagell_bound(n, units.plus_one);
  std::vector<Vec2> out;
  for (Integer y = 0; y <= bound; ++y) {
    if (auto x = exact_sqrt(n + r * y * y)) {
      out.push_back(detail::canonical_in_class({*x, y}, units.plus_one));
      out.push_back(detail::canonical_in_class({-*x, y}, units.plus_one));
    }
  }
  return detail::sorted_unique(std::move(out));
}

/// Smallest positive solution of x^2 - r y^2 = rhs, rhs in {1, 4}.
inline PellSolution minimal_solution(const Integer& r, int rhs) {
  if (rhs != 1 && rhs != 4) throw Error("minimal_solution: rhs must be 1 or 4");
  const Units units = fundamental_units(r);
  if (rhs == 1) return units.plus_one;

  // Doubling the unit always works; r = 0 (mod 4) reduces to x'^2 - (r/4) y^2 = 1,
  // and odd solutions (r = 1 mod 4) come out of the PQa classes.
  Integer best_y = 2 * units.plus_one.y;
  if (r % 4 == 0) best_y = std::min(best_y, fundamental_units(r / 4).plus_one.y);
  for (const Vec2& v : fundamental_solutions(r, 4, units)) {
    if (v.y > 0 && v.y < best_y) best_y = v.y;
  }
  const Integer x = isqrt(4 + r * best_y * best_y);
  return make_solution(r, x, best_y, 4, SolutionTag::fundamental);
}

struct Prefilter {
  Integer modulus;
  bool obstructs = false;
};

struct Certificate {
  std::string method;           // "prefilter", "nagell-scan" or "pqa"
  Integer bound;                // Nagell bound on y for a class representative
  std::vector<Prefilter> prefilters;
  std::optional<Integer> obstruction_modulus;
};

struct Decision {
  bool solvable = false;
  std::optional<PellSolution> solution;
  Certificate certificate;
};

namespace detail {

inline bool residue_solvable(const Integer& r, const Integer& n, unsigned modulus) {
  const Integer m = modulus;
  const Integer target = floor_mod(n, m);
  for (unsigned x = 0; x < modulus; ++x) {
    for (unsigned y = 0; y < modulus; ++y) {
      if (floor_mod(Integer(x) * x - r * Integer(y) * y, m) == target) return true;
    }
  }
  return false;
}

// For an odd prime p | r: x^2 = N (mod p) must be solvable.
inline bool square_mod_prime(const Integer& n, const Integer& p) {
  const Integer a = floor_mod(n, p);
  if (a == 0) return true;
  return boost::multiprecision::powm(a, (p - 1) / 2, p) == 1;
}

inline std::vector<Integer> small_odd_prime_factors(Integer r, const Integer& limit) {
  std::vector<Integer> out;
  while (r % 2 == 0) r /= 2;
  for (Integer p = 3; p <= limit && p * p <= r; p += 2) {
    if (r % p == 0) {
      out.push_back(p);
      while (r % p == 0) r /= p;
    }
  }
  if (r > 1 && r <= limit * limit) out.push_back(r);
  return out;
}

}  // namespace detail

/// Decides whether x^2 - r y^2 = N has an integer solution.
inline Decision solvable(const Integer& r, const Integer& n,
                         unsigned long scan_limit = kDefaultScanLimit) {
  if (n == 0) throw Error("solvable: N must be nonzero");
  if (r <= 0 || is_perfect_square(r)) throw Error("solvable: r must be a positive non-square");

  Decision decision;
  Certificate& cert = decision.certificate;
  const Units units = fundamental_units(r);
  cert.bound = nagell_bound(n, units.plus_one);

  std::vector<Integer> moduli{8, 16};
  for (const Integer& p : detail::small_odd_prime_factors(r, 100000)) moduli.push_back(p);
  for (const Integer& m : moduli) {
    const bool ok = m <= 16 ? detail::residue_solvable(r, n, m.convert_to<unsigned>())
                            : detail::square_mod_prime(n, m);
    cert.prefilters.push_back({m, !ok});
    if (!ok) {
      cert.method = "prefilter";
      cert.obstruction_modulus = m;
      return decision;
    }
  }

  if (cert.bound <= scan_limit) {
    cert.method = "nagell-scan";
    for (Integer y = n < 0 ? 1 : 0; y <= cert.bound; ++y) {
      if (auto x = exact_sqrt(n + r * y * y)) {
        decision.solvable = true;
        decision.solution = make_solution(r, *x, y, n);
        return decision;
      }
    }
    return decision;
  }

  cert.method = "pqa";
  const auto reps = fundamental_solutions(r, n, units);
  if (!reps.empty()) {
    decision.solvable = true;
    const Vec2& v = reps.front();
    decision.solution = make_solution(r, abs(v.x), v.y, n);
  }
  return decision;
}

}  // namespace k3lat::pell
