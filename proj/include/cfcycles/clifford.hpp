#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfcycles/chain.hpp"
#include "cfcycles/multivector.hpp"

namespace cfcycles {

/// Exact square root when one exists in the scalar's field.
std::optional<Rational> rational_exact_sqrt(const Rational& x);

template <class S>
std::optional<S> exact_sqrt(const S& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    return rational_exact_sqrt(x);
  } else if constexpr (std::is_same_v<S, QSqrt2>) {
    if (x.s == 0) {
      auto r = rational_exact_sqrt(x.r);
      if (r) return QSqrt2(*r);
      return std::nullopt;
    }
    return std::nullopt;
  } else {
    return x >= 0 ? std::optional<S>(std::sqrt(x)) : std::nullopt;
  }
}

/// 2x2 matrix of Clifford numbers from Cl(n) defining a Moebius map of R^n
/// (and, lifted, of R^{n+1}). Entries are products of vectors, the mixed
/// products a b*, c d*, c* a, d* b are vectors, and the pseudodeterminant
/// delta = a d* - b c* is a nonzero real.
template <class S>
struct VersorMatrix {
  Multivector<S> a, b, c, d;
  S delta;

  unsigned base_dim() const { return a.dim(); }

  static VersorMatrix identity(unsigned dim) {
    return {Multivector<S>::scalar(dim, S(1)), Multivector<S>(dim), Multivector<S>(dim),
            Multivector<S>::scalar(dim, S(1)), S(1)};
  }

  /// Computes the pseudodeterminant and rejects matrices where it is not a
  /// nonzero real. The floating-point tolerance is relative to the operand
  /// products, where the cancellation happens.
  static VersorMatrix make(Multivector<S> a, Multivector<S> b, Multivector<S> c,
                           Multivector<S> d, double tol = 1e-10) {
    Multivector<S> pd = a * d.reversed() - b * c.reversed();
    double scale =
        std::max(1.0, a.max_abs() * d.max_abs() + b.max_abs() * c.max_abs());
    if (pd.off_grade_residual(0) > tol * scale)
      throw InvalidVersorMatrix("pseudodeterminant is not real");
    S delta = pd.scalar_part();
    if (sign(delta) == 0) throw InvalidVersorMatrix("pseudodeterminant vanishes");
    return {std::move(a), std::move(b), std::move(c), std::move(d), std::move(delta)};
  }

  friend VersorMatrix operator*(const VersorMatrix& x, const VersorMatrix& y) {
    return make(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d);
  }
};

/// Sphere or hyperplane in R^{n+1}: k x conj(x) - l conj(x) - x conj(l) + m = 0,
/// encoded as (k, l, m) with l a grade-1 element of Cl(n+1).
template <class S>
struct CycleND {
  S k;
  Multivector<S> l;  // ambient dimension n+1
  S m;

  unsigned ambient_dim() const { return l.dim(); }
};

/// Reflection in the hyperplane x_{n+1} = 0, applied to a cycle (negates the
/// e_{n+1} component of l). Cycles are equivalent to their reflections.
template <class S>
CycleND<S> reflect_nd(const CycleND<S>& c) {
  Multivector<S> l = c.l;
  std::uint32_t top = std::uint32_t{1} << (c.l.dim() - 1);
  l.set_coeff(top, -l.coeff(top));
  return {c.k, std::move(l), c.m};
}

template <class S>
std::vector<S> cycle_nd_center(const CycleND<S>& c) {
  std::vector<S> out = c.l.vector_components();
  for (auto& v : out) v = v / c.k;
  return out;
}

template <class S>
S cycle_nd_radius_sq(const CycleND<S>& c) {
  return (norm_sq(c.l) - c.k * c.m) / (c.k * c.k);
}

namespace detail {

template <class S>
void check_shape(bool ok, const char* what) {
  if (!ok) throw InvalidVersorMatrix(what);
}

/// Off-grade content measured against an explicit operand scale.
template <class S>
void check_grade_scaled(const Multivector<S>& x, unsigned g, double tol, double scale,
                        const char* what) {
  if (x.off_grade_residual(g) > tol * std::max(1.0, scale)) throw InvalidVersorMatrix(what);
}

template <class S>
S real_part_checked(const Multivector<S>& x, double tol, double scale, const char* what) {
  check_grade_scaled(x, 0, tol, scale, what);
  return x.scalar_part();
}

template <class S>
double entry_scale(const VersorMatrix<S>& mat) {
  return std::max({1.0, mat.a.max_abs(), mat.b.max_abs(), mat.c.max_abs(), mat.d.max_abs()});
}

}  // namespace detail

/// (a x + b)(c x + d)^{-1} acting on grade-1 elements of Cl(n+1). Commutes
/// with the reflection R in x_{n+1} = 0. Throws PoleHit when |c x + d|^2
/// vanishes (within `pole_tol` relative for floating scalars).
template <class S>
Multivector<S> mobius_apply_vector(const VersorMatrix<S>& mat, const Multivector<S>& x,
                                   double pole_tol = 1e-12) {
  const unsigned adim = x.dim();
  if (adim < mat.base_dim()) throw std::invalid_argument("point dimension below matrix base");
  const auto a = mat.a.lifted(adim), b = mat.b.lifted(adim);
  const auto c = mat.c.lifted(adim), d = mat.d.lifted(adim);
  Multivector<S> w = c * x + d;
  Multivector<S> wn = w * w.conjugated();
  double wscale = w.max_abs() * w.max_abs();
  detail::check_grade_scaled(wn, 0, 1e-10, wscale, "denominator norm is not real");
  S nu = wn.scalar_part();
  bool at_pole;
  if constexpr (is_exact_scalar_v<S>)
    at_pole = sign(nu) == 0;
  else
    at_pole = std::fabs(to_double(nu)) < pole_tol * std::max(1.0, wscale);
  if (at_pole) throw PoleHit("Moebius map evaluated at its pole");
  Multivector<S> num = (a * x + b) * w.conjugated();
  Multivector<S> res = (S(1) / nu) * num;
  double rscale = num.max_abs() / std::max(std::fabs(to_double(nu)), 1e-300);
  detail::check_grade_scaled(res, 1, 1e-10, rscale, "Moebius image is not a vector");
  return res.grade(1);
}

/// M C M* with M* = (conj(d), conj(b); conj(c), conj(a)); reads the image
/// cycle back off the product. The projective scale is the similarity's own.
template <class S>
CycleND<S> cycle_image_nd(const VersorMatrix<S>& mat, const CycleND<S>& cyc,
                          double tol = 1e-10) {
  const unsigned adim = cyc.ambient_dim();
  if (adim != mat.base_dim() + 1)
    throw std::invalid_argument("cycle must live in Cl(n+1) over the matrix base Cl(n)");
  const auto a = mat.a.lifted(adim), b = mat.b.lifted(adim);
  const auto c = mat.c.lifted(adim), d = mat.d.lifted(adim);
  const auto k = Multivector<S>::scalar(adim, cyc.k);
  const auto m = Multivector<S>::scalar(adim, cyc.m);
  // C = (l, m; k, conj(l)).
  const auto l = cyc.l;
  const auto lbar = l.conjugated();
  // Left factor M C.
  Multivector<S> p11 = a * l + b * k;
  Multivector<S> p12 = a * m + b * lbar;
  Multivector<S> p21 = c * l + d * k;
  Multivector<S> p22 = c * m + d * lbar;
  // Right factor M*.
  Multivector<S> q11 = p11 * d.conjugated() + p12 * c.conjugated();
  Multivector<S> q12 = p11 * b.conjugated() + p12 * a.conjugated();
  Multivector<S> q21 = p21 * d.conjugated() + p22 * c.conjugated();
  Multivector<S> q22 = p21 * b.conjugated() + p22 * a.conjugated();
  double escale = detail::entry_scale(mat);
  double cscale = std::max({1.0, std::fabs(to_double(cyc.k)), std::fabs(to_double(cyc.m)),
                            cyc.l.max_abs()});
  double scale = escale * escale * cscale;
  S k2 = detail::real_part_checked(q21, tol, scale, "image k is not real");
  S m2 = detail::real_part_checked(q12, tol, scale, "image m is not real");
  detail::check_grade_scaled(q11, 1, tol, scale, "image l is not a vector");
  Multivector<S> l2 = q11.grade(1);
  // The (2,2) entry is the conjugate of (1,1); fold the two reads.
  Multivector<S> sym = (S(1) / S(2)) * (l2 + q22.grade(1).conjugated());
  return {std::move(k2), std::move(sym), std::move(m2)};
}

/// Horocycle determined by the first column: (m |c|^2, m a conj(c) + delta
/// e_{n+1}, m |a|^2). Touches x_{n+1} = 0 at a conj(c)/|c|^2 with radius
/// 1/(m |c|^2). c = 0 degenerates to a hyperplane.
template <class S>
CycleND<S> horocycle_first_column_nd(const VersorMatrix<S>& mat, const S& m) {
  if (!(sign(m) > 0)) throw std::invalid_argument("horocycle scale m must be positive");
  if (mat.c.is_zero())
    throw DegenerateHorocycle("first column has c = 0; image is the hyperplane family");
  const unsigned adim = mat.base_dim() + 1;
  S csq = norm_sq(mat.c);
  Multivector<S> l = (m * (mat.a * mat.c.conjugated())).lifted(adim) +
                     mat.delta * Multivector<S>::basis_vector(adim, adim);
  return {m * csq, std::move(l), m * norm_sq(mat.a)};
}

/// Horocycle determined by the second column: (k |d|^2, k b conj(d) + delta
/// e_{n+1}, k |b|^2). Touches at b conj(d)/|d|^2 with radius 1/(k |d|^2).
template <class S>
CycleND<S> horocycle_second_column_nd(const VersorMatrix<S>& mat, const S& k) {
  if (!(sign(k) > 0)) throw std::invalid_argument("horocycle scale k must be positive");
  if (mat.d.is_zero())
    throw DegenerateHorocycle("second column has d = 0; image is the hyperplane family");
  const unsigned adim = mat.base_dim() + 1;
  Multivector<S> l = (k * (mat.b * mat.d.conjugated())).lifted(adim) +
                     mat.delta * Multivector<S>::basis_vector(adim, adim);
  return {k * norm_sq(mat.d), std::move(l), k * norm_sq(mat.b)};
}

/// Image of the hyperplane (0, x + r e_{n+1}, 0) through the origin:
/// (c x conj(d) + d conj(x) conj(c),
///  a x conj(d) + b conj(x) conj(c) + delta r e_{n+1},
///  a x conj(b) + b conj(x) conj(a)).
/// Passes a conj(c)/|c|^2 and b conj(d)/|d|^2. x must be nonzero grade-1 in Cl(n).
template <class S>
CycleND<S> connecting_cycle_nd(const VersorMatrix<S>& mat, const Multivector<S>& x, const S& r,
                               double tol = 1e-10) {
  if (x.is_zero()) throw std::invalid_argument("connecting family needs nonzero x");
  if (x.dim() != mat.base_dim()) throw std::invalid_argument("x must live in the matrix base");
  const unsigned adim = mat.base_dim() + 1;
  const auto xbar = x.conjugated();
  Multivector<S> kmv = mat.c * x * mat.d.conjugated() + mat.d * xbar * mat.c.conjugated();
  Multivector<S> mmv = mat.a * x * mat.b.conjugated() + mat.b * xbar * mat.a.conjugated();
  Multivector<S> lmv = (mat.a * x * mat.d.conjugated() + mat.b * xbar * mat.c.conjugated())
                           .lifted(adim) +
                       (mat.delta * r) * Multivector<S>::basis_vector(adim, adim);
  double escale = detail::entry_scale(mat);
  double scale = escale * escale * std::max(1.0, x.max_abs());
  S k = detail::real_part_checked(kmv, tol, scale, "connecting k is not real");
  S m = detail::real_part_checked(mmv, tol, scale, "connecting m is not real");
  detail::check_grade_scaled(lmv, 1, tol, scale, "connecting l is not a vector");
  return {std::move(k), lmv.grade(1), std::move(m)};
}

/// Product of the factors (0, 1; 1, b_j), the matrix form of the composition
/// of the inversion maps x -> (x + b_j)^{-1}. delta = (-1)^count.
template <class S>
VersorMatrix<S> md_cf_matrix(const std::vector<Multivector<S>>& bs, unsigned dim) {
  VersorMatrix<S> mat = VersorMatrix<S>::identity(dim);
  for (const auto& b : bs) {
    if (b.dim() != dim) throw std::invalid_argument("coefficient dimension mismatch");
    if (!b.is_grade(1, 0.0) && !b.is_zero())
      throw std::invalid_argument("coefficients must be vectors");
    VersorMatrix<S> f{Multivector<S>(dim), Multivector<S>::scalar(dim, S(1)),
                      Multivector<S>::scalar(dim, S(1)), b, S(-1)};
    mat = mat * f;
  }
  return mat;
}

/// b conj(d)/|d|^2, the image of 0 and the n-dimensional partial quotient.
template <class S>
Multivector<S> partial_quotient_nd(const VersorMatrix<S>& mat) {
  S dsq = norm_sq(mat.d);
  if (sign(dsq) == 0) throw PoleHit("partial quotient undefined: |d| = 0");
  return (S(1) / dsq) * (mat.b * mat.d.conjugated());
}

struct NamedCheck {
  std::string name;
  double residual;
  bool pass;
};

/// Outcome of the versor-shape validation; `kappa` relates conj(M) to M*
/// when the comparison is determinate.
struct ValidationReport {
  std::vector<NamedCheck> checks;
  std::optional<int> kappa;

  bool valid() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string to_text() const;
};

/// Checks the versor-matrix conditions: entries have pure grade parity with
/// e conj(e) a nonnegative real (practical surrogate for "product of
/// vectors"), the four mixed products are vectors (zero allowed), the
/// pseudodeterminant is a nonzero real, and M conj(M) = delta I.
template <class S>
ValidationReport ahlfors_validate(const VersorMatrix<S>& mat, double tol = 1e-10) {
  ValidationReport report;
  auto add = [&](std::string name, double residual) {
    report.checks.push_back({std::move(name), residual, residual <= tol});
  };
  auto addb = [&](std::string name, bool ok) {
    report.checks.push_back({std::move(name), ok ? 0.0 : 1.0, ok});
  };

  const double escale = detail::entry_scale(mat);
  const Multivector<S>* entries[4] = {&mat.a, &mat.b, &mat.c, &mat.d};
  const char* names[4] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i) {
    const auto& e = *entries[i];
    addb(std::string("parity-") + names[i], e.is_zero() || e.has_pure_parity());
    Multivector<S> nn = e * e.conjugated();
    double res = nn.off_grade_residual(0) / std::max(1.0, e.max_abs() * e.max_abs());
    bool nonneg = sign(nn.scalar_part()) >= 0;
    add(std::string("norm-real-") + names[i], res);
    addb(std::string("norm-nonneg-") + names[i], nonneg);
  }

  auto vector_check = [&](std::string name, const Multivector<S>& p) {
    double res = p.is_zero() ? 0.0 : p.off_grade_residual(1) / std::max(1.0, escale * escale);
    add(std::move(name), res);
  };
  vector_check("vector-ab*", mat.a * mat.b.reversed());
  vector_check("vector-cd*", mat.c * mat.d.reversed());
  vector_check("vector-c*a", mat.c.reversed() * mat.a);
  vector_check("vector-d*b", mat.d.reversed() * mat.b);

  Multivector<S> pd = mat.a * mat.d.reversed() - mat.b * mat.c.reversed();
  add("pseudodet-real", pd.off_grade_residual(0) / std::max(1.0, escale * escale));
  addb("pseudodet-nonzero", sign(pd.scalar_part()) != 0);

  // M conj(M) = delta I with conj(M) = (d*, -b*; -c*, a*).
  const S& delta = mat.delta;
  const unsigned dim = mat.base_dim();
  Multivector<S> di = Multivector<S>::scalar(dim, delta);
  Multivector<S> r11 = mat.a * mat.d.reversed() - mat.b * mat.c.reversed() - di;
  Multivector<S> r12 = -(mat.a * mat.b.reversed()) + mat.b * mat.a.reversed();
  Multivector<S> r21 = mat.c * mat.d.reversed() - mat.d * mat.c.reversed();
  Multivector<S> r22 = -(mat.c * mat.b.reversed()) + mat.d * mat.a.reversed() - di;
  double mres = std::max({r11.max_abs(), r12.max_abs(), r21.max_abs(), r22.max_abs()});
  add("mbar-identity", mres / (escale * escale));

  // kappa with conj(M) = kappa M*: compare d* against kappa conj(d), etc.
  double best_plus = 0, best_minus = 0;
  auto acc = [&](const Multivector<S>& lhs, const Multivector<S>& rhs) {
    best_plus = std::max(best_plus, (lhs - rhs).max_abs());
    best_minus = std::max(best_minus, (lhs + rhs).max_abs());
  };
  acc(mat.d.reversed(), mat.d.conjugated());
  acc(-mat.b.reversed(), mat.b.conjugated());
  acc(-mat.c.reversed(), mat.c.conjugated());
  acc(mat.a.reversed(), mat.a.conjugated());
  double kap_tol = tol * std::max(1.0, escale);
  if (best_plus <= kap_tol && best_minus > kap_tol)
    report.kappa = 1;
  else if (best_minus <= kap_tol && best_plus > kap_tol)
    report.kappa = -1;
  return report;
}

/// Touch point of the first-column horocycle, a conj(c)/|c|^2 in R^n.
template <class S>
std::vector<S> first_column_touch(const VersorMatrix<S>& mat) {
  S csq = norm_sq(mat.c);
  if (sign(csq) == 0) throw DegenerateHorocycle("touch point at infinity");
  return ((S(1) / csq) * (mat.a * mat.c.conjugated())).vector_components();
}

template <class S>
struct NdChainLink {
  std::size_t index{};
  CycleND<S> horo_prev, horo_curr, connecting;
  std::optional<CycleND<S>> mirror_connecting;
  std::vector<S> touch_prev, touch_curr;  // points of R^n
};

/// Chain of horocycles and connecting cycles for a multidimensional continued
/// fraction given by its coefficient vectors. Also keeps the running product
/// matrix (whose pseudodeterminant is (-1)^links).
template <class S>
struct NdChain {
  Arrangement arrangement{Arrangement::Tangent};
  unsigned base_dim{1};
  std::vector<NdChainLink<S>> links;
  VersorMatrix<S> matrix{VersorMatrix<S>::identity(1)};
};

namespace detail {

/// Mirror into the closed upper half-space (center height >= 0).
template <class S>
CycleND<S> upper_representative_nd(const CycleND<S>& c) {
  std::uint32_t top = std::uint32_t{1} << (c.l.dim() - 1);
  if (sign(c.l.coeff(top)) * sign(c.k) < 0) return reflect_nd(c);
  return c;
}

}  // namespace detail

/// Builds `count` links from the factors (0, 1; 1, b_j). The connecting
/// cycle of link j comes from the hyperplane (0, x + n0 e_{n+1}, 0) with x
/// the unit vector along conj(c) d, which places its center in the plane
/// through the two touch points orthogonal to x_{n+1} = 0. Exact scalars
/// require that |conj(c) d| is exactly representable (always true over Cl(1)).
template <class S>
NdChain<S> build_chain_nd(const std::vector<Multivector<S>>& bs, Arrangement arr,
                          std::size_t count) {
  if (count < 1) throw std::invalid_argument("chain needs at least one link");
  if (count > bs.size()) throw std::invalid_argument("chain longer than the coefficient list");
  const unsigned dim = bs.front().dim();
  const auto seeds = arrangement_seeds<S>(arr);
  NdChain<S> chain{arr, dim, {}, VersorMatrix<S>::identity(dim)};
  chain.links.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) {
    const auto& b = bs[j - 1];
    if (b.dim() != dim) throw std::invalid_argument("coefficient dimension mismatch");
    VersorMatrix<S> factor{Multivector<S>(dim), Multivector<S>::scalar(dim, S(1)),
                           Multivector<S>::scalar(dim, S(1)), b, S(-1)};
    chain.matrix = chain.matrix * factor;
    const VersorMatrix<S>& mat = chain.matrix;

    NdChainLink<S> link;
    link.index = j;
    try {
      link.horo_prev =
          detail::upper_representative_nd(horocycle_first_column_nd(mat, seeds.m0));
      link.horo_curr =
          detail::upper_representative_nd(horocycle_second_column_nd(mat, seeds.k0));
    } catch (const DegenerateHorocycle& e) {
      // A vanishing column means the convergent sits at infinity (the pole of
      // the running map); report which link degenerates.
      throw DegenerateHorocycle("link " + std::to_string(j) + ": " + e.what());
    }

    Multivector<S> xdir = mat.c.conjugated() * mat.d;
    detail::check_grade_scaled(xdir, 1, 1e-10, mat.c.max_abs() * mat.d.max_abs(),
                               "conj(c) d is not a vector");
    xdir = xdir.grade(1);
    S nsq = norm_sq(xdir);
    auto root = exact_sqrt(nsq);
    if (!root) throw std::invalid_argument("touch-point direction has no exact unit vector");
    Multivector<S> xhat = (S(1) / *root) * xdir;
    link.connecting =
        detail::upper_representative_nd(connecting_cycle_nd(mat, xhat, seeds.n0));
    if (arr == Arrangement::Mixed) link.mirror_connecting = reflect_nd(link.connecting);

    link.touch_prev = first_column_touch(mat);
    link.touch_curr = partial_quotient_nd(mat).vector_components();
    chain.links.push_back(std::move(link));
  }
  return chain;
}

enum class ConvergenceMode { RadiusToZero, HeightToZero };

/// Nesting and shrinking facts about a sequence of connecting cycles, the
/// sufficient conditions for convergence of the partial quotients.
struct ConvergenceReport {
  std::vector<bool> enclosure_pairs;  // pair j: cycle j+1 enclosed in cycle j
  bool enclosed{true};
  bool decreasing{true};              // strict, over the trailing window
  std::vector<double> radii;
  std::vector<double> heights;        // e_{n+1} coordinates of the centers

  std::string to_text() const;
};

/// Enclosure is tested per consecutive pair via
/// |center_j - center_{j-1}| + r_j <= r_{j-1} + tol; the monotone check
/// applies to radii (RadiusToZero) or center heights (HeightToZero) over the
/// trailing `window` entries (0 = all). All cycles must be real spheres.
template <class S>
ConvergenceReport convergence_check(const std::vector<CycleND<S>>& cycles, ConvergenceMode mode,
                                    std::size_t window = 0, double tol = 1e-12) {
  ConvergenceReport report;
  std::vector<std::vector<double>> centers;
  for (const auto& c : cycles) {
    if (sign(c.k) == 0) throw Error("convergence check needs spheres, not hyperplanes");
    S rsq = cycle_nd_radius_sq(c);
    if (!(sign(rsq) > 0)) throw Error("convergence check needs real spheres");
    std::vector<double> ctr;
    for (const auto& comp : cycle_nd_center(c)) ctr.push_back(to_double(comp));
    report.radii.push_back(std::sqrt(to_double(rsq)));
    report.heights.push_back(ctr.back());
    centers.push_back(std::move(ctr));
  }
  for (std::size_t j = 1; j < cycles.size(); ++j) {
    double dist = 0;
    for (std::size_t i = 0; i < centers[j].size(); ++i) {
      double d = centers[j][i] - centers[j - 1][i];
      dist += d * d;
    }
    dist = std::sqrt(dist);
    bool ok = dist + report.radii[j] <= report.radii[j - 1] + tol;
    report.enclosure_pairs.push_back(ok);
    report.enclosed = report.enclosed && ok;
  }
  const auto& seq = mode == ConvergenceMode::RadiusToZero ? report.radii : report.heights;
  std::size_t start = 1;
  if (window > 0 && window < seq.size()) start = seq.size() - window + 1;
  for (std::size_t j = start; j < seq.size(); ++j)
    if (!(seq[j] < seq[j - 1])) report.decreasing = false;
  return report;
}

}  // namespace cfcycles
