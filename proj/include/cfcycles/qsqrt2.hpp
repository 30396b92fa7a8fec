#pragma once

#include <cmath>
#include <string>

#include "cfcycles/rational.hpp"

namespace cfcycles {

/// Exact arithmetic in the field Q(sqrt 2): the value r + s*sqrt(2).
/// The orthogonal and mixed chain arrangements have all their cycle
/// coefficients in this field, so their residuals can be tested exactly.
struct QSqrt2 {
  Rational r{0};
  Rational s{0};

  QSqrt2() = default;
  QSqrt2(int v) : r(v) {}
  QSqrt2(Rational v) : r(std::move(v)) {}
  QSqrt2(Rational r_, Rational s_) : r(std::move(r_)), s(std::move(s_)) {}

  static QSqrt2 sqrt2() { return QSqrt2(Rational(0), Rational(1)); }

  friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) { return {x.r + y.r, x.s + y.s}; }
  friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) { return {x.r - y.r, x.s - y.s}; }
  friend QSqrt2 operator-(const QSqrt2& x) { return {-x.r, -x.s}; }
  friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
    return {x.r * y.r + 2 * x.s * y.s, x.r * y.s + x.s * y.r};
  }
  friend QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y) {
    // Multiply by the field conjugate; the norm r^2 - 2 s^2 vanishes only for 0.
    Rational norm = y.r * y.r - 2 * y.s * y.s;
    if (norm == 0) throw std::domain_error("division by zero in Q(sqrt 2)");
    return {(x.r * y.r - 2 * x.s * y.s) / norm, (x.s * y.r - x.r * y.s) / norm};
  }
  QSqrt2& operator+=(const QSqrt2& y) { return *this = *this + y; }
  QSqrt2& operator-=(const QSqrt2& y) { return *this = *this - y; }
  QSqrt2& operator*=(const QSqrt2& y) { return *this = *this * y; }
  QSqrt2& operator/=(const QSqrt2& y) { return *this = *this / y; }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) = default;
};

inline int sign(const QSqrt2& x) {
  if (x.s == 0) return sign(x.r);
  if (x.r == 0) return sign(x.s);
  if (sign(x.r) == sign(x.s)) return sign(x.r);
  // Signs differ: compare |r| against |s|*sqrt(2) by squaring.
  int t = sign(x.r * x.r - 2 * x.s * x.s);
  return sign(x.r) > 0 ? t : -t;
}

inline bool operator<(const QSqrt2& x, const QSqrt2& y) { return sign(x - y) < 0; }
inline bool operator>(const QSqrt2& x, const QSqrt2& y) { return sign(x - y) > 0; }
inline bool operator<=(const QSqrt2& x, const QSqrt2& y) { return sign(x - y) <= 0; }
inline bool operator>=(const QSqrt2& x, const QSqrt2& y) { return sign(x - y) >= 0; }

inline double to_double(const QSqrt2& x) {
  return to_double(x.r) + to_double(x.s) * std::sqrt(2.0);
}

inline std::string qsqrt2_str(const QSqrt2& x) {
  if (x.s == 0) return rational_str(x.r);
  std::string tail = rational_str(x.s) + "*sqrt2";
  if (x.r == 0) return tail;
  return rational_str(x.r) + (sign(x.s) >= 0 ? "+" : "") + tail;
}

inline std::string scalar_str(const QSqrt2& x) { return qsqrt2_str(x); }

}  // namespace cfcycles
