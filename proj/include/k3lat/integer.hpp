#pragma once

// Exact integer helpers and the 2x2 matrix type shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace k3lat {

using Integer = boost::multiprecision::cpp_int;

/// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (two routes disagreed).
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

inline int sign(const Integer& v) { return v.sign(); }

inline Integer abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw Error("isqrt of a negative number");
  return boost::multiprecision::sqrt(n);
}

inline std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer s = isqrt(n);
  if (s * s == n) return s;
  return std::nullopt;
}

/// Quotient rounded toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Remainder in [0, |m|).
inline Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

struct ExtendedGcd {
  Integer g;  // >= 0
  Integer x;
  Integer y;  // a*x + b*y == g
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline std::string to_string(const Integer& v) { return v.str(); }

/// A column vector of two integers.
struct Vec2 {
  Integer x;
  Integer y;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.x + v.x, u.y + v.y}; }
  friend Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.x - v.x, u.y - v.y}; }
  friend Vec2 operator*(const Integer& k, const Vec2& v) { return {k * v.x, k * v.y}; }
};

/// Row-major 2x2 integer matrix [[m00, m01], [m10, m11]].
struct Matrix2 {
  Integer m00 = 0;
  Integer m01 = 0;
  Integer m10 = 0;
  Integer m11 = 0;

  static Matrix2 identity() { return {1, 0, 0, 1}; }

  Integer det() const { return m00 * m11 - m01 * m10; }
  Integer trace() const { return m00 + m11; }
  Matrix2 transpose() const { return {m00, m10, m01, m11}; }
  /// adj(M), so that M * adj(M) = det(M) * I.
  Matrix2 adjugate() const { return {m11, -m01, -m10, m00}; }
  bool is_zero() const { return m00 == 0 && m01 == 0 && m10 == 0 && m11 == 0; }
  bool symmetric() const { return m01 == m10; }

  friend bool operator==(const Matrix2&, const Matrix2&) = default;

  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
  friend Vec2 operator*(const Matrix2& a, const Vec2& v) {
    return {a.m00 * v.x + a.m01 * v.y, a.m10 * v.x + a.m11 * v.y};
  }
  friend Matrix2 operator*(const Integer& k, const Matrix2& a) {
    return {k * a.m00, k * a.m01, k * a.m10, k * a.m11};
  }
  friend Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
  }
  friend Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
  }
  Matrix2 operator-() const { return {-m00, -m01, -m10, -m11}; }

  /// Entrywise reduction into [0, |m|).
  Matrix2 mod(const Integer& m) const {
    return {floor_mod(m00, m), floor_mod(m01, m), floor_mod(m10, m), floor_mod(m11, m)};
  }

  /// True iff every entry is divisible by d.
  bool divisible_by(const Integer& d) const {
    return m00 % d == 0 && m01 % d == 0 && m10 % d == 0 && m11 % d == 0;
  }

  /// Exact entrywise division; caller guarantees divisibility.
  Matrix2 exact_div(const Integer& d) const { return {m00 / d, m01 / d, m10 / d, m11 / d}; }

  /// Inverse of a unimodular matrix.
  Matrix2 unimodular_inverse() const {
    const Integer d = det();
    if (d != 1 && d != -1) throw Error("matrix is not unimodular");
    return d * adjugate();
  }
};

/// M^k for k >= 0 by repeated squaring.
inline Matrix2 power(Matrix2 base, unsigned long long k) {
  Matrix2 result = Matrix2::identity();
  while (k > 0) {
    if (k & 1U) result = result * base;
    base = base * base;
    k >>= 1U;
  }
  return result;
}

/// M^k mod m, entries in [0, |m|).
inline Matrix2 power_mod(Matrix2 base, unsigned long long k, const Integer& m) {
  Matrix2 result = Matrix2::identity().mod(m);
  base = base.mod(m);
  while (k > 0) {
    if (k & 1U) result = (result * base).mod(m);
    base = (base * base).mod(m);
    k >>= 1U;
  }
  return result;
}

}  // namespace k3lat
