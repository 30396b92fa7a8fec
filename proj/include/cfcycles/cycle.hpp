#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <variant>

#include "cfcycles/errors.hpp"
#include "cfcycles/qsqrt2.hpp"
#include "cfcycles/rational.hpp"

namespace cfcycles {

template <class S>
inline constexpr bool is_exact_scalar_v = !std::is_floating_point_v<S>;

template <class S>
S abs_value(const S& x) {
  if constexpr (std::is_floating_point_v<S>)
    return std::fabs(x);
  else
    return sign(x) < 0 ? S(-x) : x;
}

/// Minimal complex number over an arbitrary scalar ring. std::complex is only
/// specified for the builtin floating types, and the cycle matrices must also
/// work over exact scalars.
template <class S>
struct Cplx {
  S re{};
  S im{};

  friend Cplx operator+(const Cplx& x, const Cplx& y) { return {x.re + y.re, x.im + y.im}; }
  friend Cplx operator-(const Cplx& x, const Cplx& y) { return {x.re - y.re, x.im - y.im}; }
  friend Cplx operator-(const Cplx& x) { return {-x.re, -x.im}; }
  friend Cplx operator*(const Cplx& x, const Cplx& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend Cplx operator*(const S& s, const Cplx& x) { return {s * x.re, s * x.im}; }
  friend bool operator==(const Cplx& x, const Cplx& y) = default;

  Cplx conj() const { return {re, -im}; }
  S norm_sq() const { return re * re + im * im; }
};

/// Divide complex values; the denominator must be nonzero.
template <class S>
Cplx<S> cplx_div(const Cplx<S>& x, const Cplx<S>& y) {
  S n = y.norm_sq();
  Cplx<S> z = x * y.conj();
  return {z.re / n, z.im / n};
}

/// A circle or line in the plane, encoded projectively by the coefficients of
///   k (u^2 + v^2) - 2 l u - 2 n v + m = 0.
/// Circle iff k != 0; line iff k = 0; point iff l^2 + n^2 - k m = 0.
template <class S>
struct Cycle2 {
  S k{}, l{}, n{}, m{};

  friend bool operator==(const Cycle2& x, const Cycle2& y) = default;
};

/// Mirror image in the real axis, (k, l, n, m) -> (k, l, -n, m). Involution.
template <class S>
Cycle2<S> reflect(const Cycle2<S>& c) {
  return {c.k, c.l, -c.n, c.m};
}

/// l^2 + n^2 - k m: positive for real non-point cycles, the squared-radius
/// numerator for circles.
template <class S>
S cycle_discriminant(const Cycle2<S>& c) {
  return c.l * c.l + c.n * c.n - c.k * c.m;
}

/// Value of the defining equation at (u, v); zero iff the point lies on the cycle.
template <class S>
S cycle_eval(const Cycle2<S>& c, const S& u, const S& v) {
  return c.k * (u * u + v * v) - 2 * c.l * u - 2 * c.n * v + c.m;
}

/// True when the two quadruples name the same projective point (all 2x2
/// minors vanish). Intended for exact scalars.
template <class S>
bool projectively_proportional(const Cycle2<S>& x, const Cycle2<S>& y) {
  const S a[4] = {x.k, x.l, x.n, x.m};
  const S b[4] = {y.k, y.l, y.n, y.m};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(a[i] * b[j] - a[j] * b[i] == S(0))) return false;
  // Exclude the zero quadruple masquerading as proportional.
  bool xz = x == Cycle2<S>{};
  bool yz = y == Cycle2<S>{};
  return xz == yz;
}

/// Real 2x2 matrix acting as the Moebius map z -> (az + b)/(cz + d),
/// normalized so that det = delta = +-1.
template <class S>
struct MoebiusMat2 {
  S a{1}, b{0}, c{0}, d{1};
  int delta{1};

  static MoebiusMat2 identity() { return {}; }

  /// Exact scalars: requires det = +-1 on the nose. Doubles: scales by
  /// 1/sqrt(|det|).
  static MoebiusMat2 make(S a, S b, S c, S d) {
    S det = a * d - b * c;
    if constexpr (is_exact_scalar_v<S>) {
      if (det == S(1)) return {std::move(a), std::move(b), std::move(c), std::move(d), 1};
      if (det == S(-1)) return {std::move(a), std::move(b), std::move(c), std::move(d), -1};
      throw std::invalid_argument("exact Moebius matrix must have determinant +-1");
    } else {
      if (det == 0) throw std::invalid_argument("singular Moebius matrix");
      S s = std::sqrt(std::fabs(det));
      return {a / s, b / s, c / s, d / s, det > 0 ? 1 : -1};
    }
  }
};

/// The 2x2 matrix form of a cycle, ((l + i n, -m), (k, -l + i n)). Its trace
/// is purely imaginary and the anti-diagonal is real.
template <class S>
struct CycleMat2 {
  Cplx<S> a11, a12, a21, a22;
};

template <class S>
CycleMat2<S> to_cycle_matrix(const Cycle2<S>& c) {
  return {{c.l, c.n}, {-c.m, S(0)}, {c.k, S(0)}, {-c.l, c.n}};
}

/// Inverse of to_cycle_matrix up to projective scale. Rejects matrices whose
/// shape invariants fail: exactly for exact scalars, within `tol` relative to
/// the matrix magnitude for doubles.
template <class S>
Cycle2<S> from_cycle_matrix(const CycleMat2<S>& m, double tol = 1e-12) {
  const S k = m.a21.re;
  const S l = m.a11.re;
  const S n = m.a11.im;
  const S mm = -m.a12.re;
  bool ok;
  if constexpr (is_exact_scalar_v<S>) {
    ok = m.a21.im == S(0) && m.a12.im == S(0) && m.a22.re == -l && m.a22.im == n;
  } else {
    double scale = 0;
    for (const auto& e : {m.a11, m.a12, m.a21, m.a22})
      scale = std::max({scale, std::fabs(to_double(e.re)), std::fabs(to_double(e.im))});
    double bound = tol * std::max(1.0, scale);
    ok = std::fabs(to_double(m.a21.im)) <= bound && std::fabs(to_double(m.a12.im)) <= bound &&
         std::fabs(to_double(m.a11.re + m.a22.re)) <= bound &&
         std::fabs(to_double(m.a11.im - m.a22.im)) <= bound;
  }
  if (!ok) throw std::invalid_argument("matrix is not of cycle shape");
  return {k, l, n, mm};
}

/// A point of the Riemann sphere: finite complex value or infinity.
template <class S>
struct SpherePoint {
  std::optional<Cplx<S>> z;

  static SpherePoint infinity() { return {std::nullopt}; }
  static SpherePoint at(S u, S v) { return {Cplx<S>{std::move(u), std::move(v)}}; }
  bool is_infinity() const { return !z.has_value(); }
};

/// Standard Moebius image; infinity maps to a/c and the pole -d/c to infinity.
template <class S>
SpherePoint<S> apply_moebius_point(const MoebiusMat2<S>& mat, const SpherePoint<S>& p) {
  auto is_zero = [](const Cplx<S>& w) {
    if constexpr (is_exact_scalar_v<S>)
      return w == Cplx<S>{};
    else
      return w.norm_sq() == 0;
  };
  if (p.is_infinity()) {
    if (mat.c == S(0)) return SpherePoint<S>::infinity();
    return {Cplx<S>{mat.a / mat.c, S(0)}};
  }
  Cplx<S> num = Cplx<S>{mat.a, S(0)} * *p.z + Cplx<S>{mat.b, S(0)};
  Cplx<S> den = Cplx<S>{mat.c, S(0)} * *p.z + Cplx<S>{mat.d, S(0)};
  if (is_zero(den)) return SpherePoint<S>::infinity();
  return {cplx_div(num, den)};
}

/// Image of a cycle under the Moebius map: M C M^{-1} with
/// M^{-1} = delta * adj(M). The projective scale is whatever the similarity
/// yields; no renormalization.
template <class S>
Cycle2<S> cycle_image(const MoebiusMat2<S>& mat, const Cycle2<S>& c) {
  const CycleMat2<S> cm = to_cycle_matrix(c);
  const S& a = mat.a;
  const S& b = mat.b;
  const S& cc = mat.c;
  const S& d = mat.d;
  // Left multiply by M.
  Cplx<S> p11 = a * cm.a11 + b * cm.a21;
  Cplx<S> p12 = a * cm.a12 + b * cm.a22;
  Cplx<S> p21 = cc * cm.a11 + d * cm.a21;
  Cplx<S> p22 = cc * cm.a12 + d * cm.a22;
  // Right multiply by delta * adj(M) = delta * (d, -b; -c, a).
  S dl = S(mat.delta);
  CycleMat2<S> r{dl * (d * p11 - cc * p12), dl * (a * p12 - b * p11),
                 dl * (d * p21 - cc * p22), dl * (a * p22 - b * p21)};
  // Read the quadruple back symmetrized; exact arithmetic satisfies the shape
  // identities on the nose, floating point up to roundoff.
  S two(2);
  return {r.a21.re, (r.a11.re - r.a22.re) / two, (r.a11.im + r.a22.im) / two, -r.a12.re};
}

/// Moebius-invariant inner product, closed form
/// 2 l1 l2 + 2 n1 n2 - k1 m2 - m1 k2.
template <class S>
S inner_product(const Cycle2<S>& c1, const Cycle2<S>& c2) {
  return 2 * c1.l * c2.l + 2 * c1.n * c2.n - c1.k * c2.m - c1.m * c2.k;
}

/// The same product computed as Re tr(C1 * conj(C2)) through the matrix form;
/// kept separate so the two routes can be checked against each other.
template <class S>
S inner_product_trace(const Cycle2<S>& c1, const Cycle2<S>& c2) {
  const CycleMat2<S> m1 = to_cycle_matrix(c1);
  const CycleMat2<S> m2 = to_cycle_matrix(c2);
  Cplx<S> t11 = m1.a11 * m2.a11.conj() + m1.a12 * m2.a21.conj();
  Cplx<S> t22 = m1.a21 * m2.a12.conj() + m1.a22 * m2.a22.conj();
  return t11.re + t22.re;
}

/// Orthogonality of cycles: vanishing of the invariant inner product. Exact
/// scalars test on the nose; doubles within tol relative to the geometric
/// mean of the self-products.
template <class S>
bool is_orthogonal(const Cycle2<S>& c1, const Cycle2<S>& c2, double tol = 1e-12) {
  S ip = inner_product(c1, c2);
  if constexpr (is_exact_scalar_v<S>) {
    (void)tol;
    return ip == S(0);
  } else {
    double scale = std::sqrt(std::fabs(to_double(inner_product(c1, c1)) *
                                       to_double(inner_product(c2, c2))));
    if (scale == 0) return std::fabs(to_double(ip)) <= tol;
    return std::fabs(to_double(ip)) <= tol * scale;
  }
}

/// External tangency (Descartes--Kirillov): with both representatives scaled
/// to discriminant 1, the self-product of their sum vanishes. Equivalently,
/// with B the bilinear form l1 l2 + n1 n2 - (k1 m2 + m1 k2)/2,
///   B <= 0 and B^2 = D1 D2.
/// Exact scalars avoid the square root entirely. Requires both cycles real
/// and non-point (discriminant > 0).
template <class S>
bool is_tangent(const Cycle2<S>& c1, const Cycle2<S>& c2, double tol = 1e-12) {
  S d1 = cycle_discriminant(c1);
  S d2 = cycle_discriminant(c2);
  if (!(sign(d1) > 0) || !(sign(d2) > 0))
    throw ImaginaryCycle("tangency test requires real non-point cycles");
  S two(2);
  S bform = c1.l * c2.l + c1.n * c2.n - (c1.k * c2.m + c1.m * c2.k) / two;
  if constexpr (is_exact_scalar_v<S>) {
    (void)tol;
    return sign(bform) <= 0 && bform * bform == d1 * d2;
  } else {
    double value = 2.0 + 2.0 * to_double(bform) / std::sqrt(to_double(d1) * to_double(d2));
    return std::fabs(value) <= tol;
  }
}

struct CircleGeometry {
  double cu, cv;
  double radius;
};

struct LineGeometry {
  double lu, lv;  // normal direction (l, n)
  double offset;  // points satisfy lu*u + lv*v = offset
};

using CycleGeometry = std::variant<CircleGeometry, LineGeometry>;

inline Cycle2<double> to_double_cycle(const Cycle2<double>& c) { return c; }
template <class S>
Cycle2<double> to_double_cycle(const Cycle2<S>& c) {
  return {to_double(c.k), to_double(c.l), to_double(c.n), to_double(c.m)};
}

/// Decode the quadruple: circles yield center (l/k, n/k) and radius
/// sqrt(l^2 + n^2 - km)/|k|, lines their normal and offset. Exact scalars
/// decode exactly before lowering to doubles, so tiny radii survive the
/// cancellation in the discriminant. Throws ImaginaryCycle when the
/// discriminant is negative (doubles: beyond roundoff of the cancelled terms).
template <class S>
CycleGeometry center_radius(const Cycle2<S>& c) {
  if (sign(c.k) == 0)
    return LineGeometry{to_double(c.l), to_double(c.n), to_double(c.m) / 2.0};
  S disc = cycle_discriminant(c);
  if constexpr (is_exact_scalar_v<S>) {
    if (sign(disc) < 0) throw ImaginaryCycle("cycle has negative discriminant");
    S rsq = disc / (c.k * c.k);
    return CircleGeometry{to_double(S(c.l / c.k)), to_double(S(c.n / c.k)),
                          std::sqrt(to_double(rsq))};
  } else {
    double d = disc;
    if (d < 0) {
      double scale = c.l * c.l + c.n * c.n + std::fabs(c.k * c.m);
      if (-d > 1e-9 * scale) throw ImaginaryCycle("cycle has negative discriminant");
      d = 0;
    }
    return CircleGeometry{c.l / c.k, c.n / c.k, std::sqrt(d) / std::fabs(c.k)};
  }
}

/// "k l n m" whitespace-separated, rationals as p/q, doubles as the shortest
/// round-trip decimal.
template <class S>
std::string cycle_str(const Cycle2<S>& c) {
  return scalar_str(c.k) + " " + scalar_str(c.l) + " " + scalar_str(c.n) + " " +
         scalar_str(c.m);
}

}  // namespace cfcycles
