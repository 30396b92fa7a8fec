#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cfcycles/continued_fraction.hpp"
#include "cfcycles/cycle.hpp"

namespace cfcycles {

/// The three ways to tie consecutive horocycles together. Seed parameters
/// (m0, k0, n0) pick one member from each of the three invariant families:
///   Tangent:     (2, 2, 0)           -- horocycles touch
///   Orthogonal:  (sqrt2, sqrt2, 0)   -- horocycles orthogonal
///   Mixed:       (sqrt2, sqrt2, +-1) -- orthogonal horocycles, connecting
///                cycle through an intersection point at 45 degrees
enum class Arrangement { Tangent, Orthogonal, Mixed };

inline const char* arrangement_name(Arrangement a) {
  switch (a) {
    case Arrangement::Tangent: return "tangent";
    case Arrangement::Orthogonal: return "orthogonal";
    default: return "mixed";
  }
}

template <class S>
struct ArrangementSeeds {
  S m0, k0, n0;
};

template <class S>
ArrangementSeeds<S> arrangement_seeds(Arrangement arr) {
  if constexpr (std::is_same_v<S, Rational>) {
    if (arr != Arrangement::Tangent)
      throw std::invalid_argument("sqrt(2) seeds are not rational; use QSqrt2 or double");
    return {Rational(2), Rational(2), Rational(0)};
  } else if constexpr (std::is_same_v<S, QSqrt2>) {
    switch (arr) {
      case Arrangement::Tangent: return {QSqrt2(2), QSqrt2(2), QSqrt2(0)};
      case Arrangement::Orthogonal: return {QSqrt2::sqrt2(), QSqrt2::sqrt2(), QSqrt2(0)};
      default: return {QSqrt2::sqrt2(), QSqrt2::sqrt2(), QSqrt2(1)};
    }
  } else {
    const S r2 = std::sqrt(S(2));
    switch (arr) {
      case Arrangement::Tangent: return {S(2), S(2), S(0)};
      case Arrangement::Orthogonal: return {r2, r2, S(0)};
      default: return {r2, r2, S(1)};
    }
  }
}

/// Image of the horizontal-line family (0, 0, 1, m) under M, which depends on
/// the first column only: (c^2 m, a c m, delta, a^2 m). Touches the real axis
/// at a/c with radius 1/(m c^2). c = 0 degenerates to a line.
template <class S>
Cycle2<S> horocycle_first_column(const MoebiusMat2<S>& mat, const S& m) {
  if (!(sign(m) > 0)) throw std::invalid_argument("horocycle scale m must be positive");
  if (sign(mat.c) == 0)
    throw DegenerateHorocycle("first column has c = 0; image is the line family");
  return {mat.c * mat.c * m, mat.a * mat.c * m, S(mat.delta), mat.a * mat.a * m};
}

/// Image of the family (k, 0, 1, 0) under M, which depends on the second
/// column only: (d^2 k, b d k, delta, b^2 k). Touches at b/d with radius
/// 1/(k d^2). d = 0 degenerates.
template <class S>
Cycle2<S> horocycle_second_column(const MoebiusMat2<S>& mat, const S& k) {
  if (!(sign(k) > 0)) throw std::invalid_argument("horocycle scale k must be positive");
  if (sign(mat.d) == 0)
    throw DegenerateHorocycle("second column has d = 0; image is the line family");
  return {mat.d * mat.d * k, mat.b * mat.d * k, S(mat.delta), mat.b * mat.b * k};
}

/// Image of a line through the origin (0, 1, n, 0):
/// (2 d c, b c + d a, delta n, 2 b a). Passes the points a/c and b/d on the
/// real axis, i.e. both convergents when M is a convergent matrix.
template <class S>
Cycle2<S> connecting_cycle(const MoebiusMat2<S>& mat, const S& n) {
  return {2 * mat.d * mat.c, mat.b * mat.c + mat.d * mat.a, S(mat.delta) * n, 2 * mat.b * mat.a};
}

namespace detail {

template <class S>
bool horocycle_shape(const Cycle2<S>& c) {
  // Tangent to the real axis: l^2 = k m, k != 0.
  if constexpr (is_exact_scalar_v<S>) {
    return sign(c.k) != 0 && c.l * c.l == c.k * c.m;
  } else {
    double scale = std::max({std::fabs(c.k), std::fabs(c.l), std::fabs(c.n), std::fabs(c.m), 1.0});
    return c.k != 0 && std::fabs(c.l * c.l - c.k * c.m) <= 1e-9 * scale * scale;
  }
}

}  // namespace detail

/// The unique horocycle at touch point p orthogonal to `prev`; the
/// orthogonality relation is linear in the new height. `prev` must be a
/// horocycle (1, p', n', p'^2) up to scale with n' > 0.
template <class S>
Cycle2<S> next_n_orthogonal(const Cycle2<S>& prev, const S& p) {
  if (!detail::horocycle_shape(prev))
    throw std::invalid_argument("previous cycle is not a horocycle");
  S pp = prev.l / prev.k;
  S np = prev.n / prev.k;
  if (sign(np) <= 0) throw DegenerateHorocycle("previous horocycle has no height");
  S d = p - pp;
  S n = d * d / (2 * np);
  if (sign(n) == 0) throw DegenerateHorocycle("coincident touch points give a point cycle");
  return {S(1), p, n, p * p};
}

/// The externally tangent horocycle at touch point p; the quadratic tangency
/// relation has a second (internal/degenerate) root which is discarded.
template <class S>
Cycle2<S> next_n_tangent(const Cycle2<S>& prev, const S& p) {
  if (!detail::horocycle_shape(prev))
    throw std::invalid_argument("previous cycle is not a horocycle");
  S pp = prev.l / prev.k;
  S np = prev.n / prev.k;
  if (sign(np) <= 0) throw DegenerateHorocycle("previous horocycle has no height");
  S d = p - pp;
  S n = d * d / (4 * np);
  if (sign(n) == 0) throw DegenerateHorocycle("coincident touch points give a point cycle");
  return {S(1), p, n, p * p};
}

/// One link of a horocycle chain: the horocycles at two consecutive
/// convergents plus the cycle joining their touch points. Mixed chains also
/// carry the mirror image of the connecting cycle.
template <class S>
struct ChainLink {
  std::size_t index{};
  Cycle2<S> horo_prev, horo_curr, connecting;
  std::optional<Cycle2<S>> mirror_connecting;
  Rational touch_prev, touch_curr;  // exact convergents, integer part folded in
  Rational q_prev, q_curr;          // denominators Q_{n-1}, Q_n of the term part
  Rational det{1};                  // product of (-a_j), j <= n
};

template <class S>
struct Chain {
  Arrangement arrangement{Arrangement::Tangent};
  ArrangementSeeds<S> seeds{};
  Cycle2<S> seed_line{};  // (0, 0, 1, m0): the horocycle at infinity
  std::vector<ChainLink<S>> links;
};

namespace detail {

template <class S>
S from_rational(const Rational& x) {
  if constexpr (std::is_same_v<S, Rational>)
    return x;
  else if constexpr (std::is_same_v<S, QSqrt2>)
    return QSqrt2(x);
  else
    return to_double(x);
}

/// Mirror a cycle into the closed upper half-plane (center height >= 0).
/// Consecutive convergent matrices alternate determinant sign, so raw images
/// alternate sides of the axis; the mirror equivalence picks one side.
template <class S>
Cycle2<S> upper_representative(const Cycle2<S>& c) {
  if (sign(c.n) * sign(c.k) < 0) return reflect(c);
  return c;
}

}  // namespace detail

/// Builds `count` links for the first `count` convergents. Link n uses the
/// matrix of the first n terms with the integer part folded in as the prefix
/// (1 b0; 0 1). Exact scalars require every |a_j| = 1 (so all matrices have
/// determinant +-1); doubles normalize by 1/sqrt(|det|).
template <class S>
Chain<S> build_chain(const ContinuedFraction& cf, Arrangement arr, std::size_t count) {
  if (count < 1) throw std::invalid_argument("chain needs at least one link");
  if (count > cf.size()) throw std::invalid_argument("chain longer than the term list");
  const auto seeds = arrangement_seeds<S>(arr);
  Chain<S> chain{arr, seeds, Cycle2<S>{S(0), S(0), S(1), seeds.m0}, {}};
  chain.links.reserve(count);

  const Rational b0 = cf.integer_part().value_or(Rational(0));
  Mat2Q mat{1, b0, 0, 1};  // prefix, then term matrices accumulate
  ConvergentState state;
  for (std::size_t n = 1; n <= count; ++n) {
    const CfTerm& term = cf.terms()[n - 1];
    state = convergent_step(state, term);
    mat = mat * Mat2Q{0, term.a, 1, term.b};
    if (state.q_curr == 0) throw DivergentConvergent(n);

    auto mob = MoebiusMat2<S>::make(
        detail::from_rational<S>(mat.a), detail::from_rational<S>(mat.b),
        detail::from_rational<S>(mat.c), detail::from_rational<S>(mat.d));

    ChainLink<S> link;
    link.index = n;
    link.horo_prev = detail::upper_representative(horocycle_first_column(mob, seeds.m0));
    link.horo_curr = detail::upper_representative(horocycle_second_column(mob, seeds.k0));
    link.connecting = detail::upper_representative(connecting_cycle(mob, seeds.n0));
    if (arr == Arrangement::Mixed)
      link.mirror_connecting = reflect(link.connecting);
    link.touch_prev = b0 + state.p_prev / state.q_prev;
    link.touch_curr = b0 + state.p_curr / state.q_curr;
    link.q_prev = state.q_prev;
    link.q_curr = state.q_curr;
    link.det = state.determinant();
    chain.links.push_back(std::move(link));
  }
  return chain;
}

template <class S>
Chain<double> to_double_chain(const Chain<S>& chain) {
  Chain<double> out;
  out.arrangement = chain.arrangement;
  out.seeds = {to_double(chain.seeds.m0), to_double(chain.seeds.k0), to_double(chain.seeds.n0)};
  out.seed_line = to_double_cycle(chain.seed_line);
  out.links.reserve(chain.links.size());
  for (const auto& l : chain.links) {
    ChainLink<double> d;
    d.index = l.index;
    d.horo_prev = to_double_cycle(l.horo_prev);
    d.horo_curr = to_double_cycle(l.horo_curr);
    d.connecting = to_double_cycle(l.connecting);
    if (l.mirror_connecting) d.mirror_connecting = to_double_cycle(*l.mirror_connecting);
    d.touch_prev = l.touch_prev;
    d.touch_curr = l.touch_curr;
    d.q_prev = l.q_prev;
    d.q_curr = l.q_curr;
    d.det = l.det;
    out.links.push_back(std::move(d));
  }
  return out;
}

/// "k l n m" lines for every cycle of the chain.
template <class S>
std::string chain_cycles_text(const Chain<S>& chain) {
  std::string out = "seed-line " + cycle_str(chain.seed_line) + "\n";
  for (const auto& link : chain.links) {
    const std::string tag = "link " + std::to_string(link.index) + " ";
    out += tag + "horo-prev " + cycle_str(link.horo_prev) + "\n";
    out += tag + "horo-curr " + cycle_str(link.horo_curr) + "\n";
    out += tag + "connecting " + cycle_str(link.connecting) + "\n";
    if (link.mirror_connecting) out += tag + "mirror " + cycle_str(*link.mirror_connecting) + "\n";
  }
  return out;
}

struct VerificationCheck {
  std::size_t link;
  std::string name;
  double residual;
  bool pass;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string to_text() const;
};

namespace detail {

/// Residual of "point (u, v) lies on c", scaled so it is invariant under both
/// the projective scale of c and the size of the point.
template <class S>
double incidence_residual(const Cycle2<S>& c, const S& u, const S& v) {
  S val = cycle_eval(c, u, v);
  if constexpr (is_exact_scalar_v<S>) {
    if (sign(val) == 0) return 0.0;
  }
  double scale = std::fabs(to_double(c.k)) + 2 * std::fabs(to_double(c.l)) +
                 2 * std::fabs(to_double(c.n)) + std::fabs(to_double(c.m));
  double pt = 1.0 + to_double(u) * to_double(u) + to_double(v) * to_double(v);
  return std::fabs(to_double(val)) / (scale * pt);
}

/// |<c1, c2>| normalized by the geometric mean of the self-products.
template <class S>
double orthogonality_residual(const Cycle2<S>& c1, const Cycle2<S>& c2) {
  S ip = inner_product(c1, c2);
  if constexpr (is_exact_scalar_v<S>) {
    if (sign(ip) == 0) return 0.0;
  }
  double scale = std::sqrt(std::fabs(to_double(inner_product(c1, c1)) *
                                     to_double(inner_product(c2, c2))));
  if (scale == 0) scale = 1.0;
  return std::fabs(to_double(ip)) / scale;
}

/// Residual of the external-tangency condition on normalized representatives.
template <class S>
double tangency_residual(const Cycle2<S>& c1, const Cycle2<S>& c2) {
  S d1 = cycle_discriminant(c1);
  S d2 = cycle_discriminant(c2);
  S bform = c1.l * c2.l + c1.n * c2.n - (c1.k * c2.m + c1.m * c2.k) / S(2);
  if constexpr (is_exact_scalar_v<S>) {
    if (sign(bform) <= 0 && bform * bform == d1 * d2) return 0.0;
  }
  return std::fabs(2.0 + 2.0 * to_double(bform) /
                             std::sqrt(to_double(d1) * to_double(d2)));
}

/// Relative difference of the circle's squared radius from `expected_sq`.
template <class S>
double radius_sq_residual(const Cycle2<S>& c, const S& expected_sq) {
  S rsq = cycle_discriminant(c) / (c.k * c.k);
  if constexpr (is_exact_scalar_v<S>) {
    if (rsq == expected_sq) return 0.0;
  }
  return std::fabs(to_double(rsq) - to_double(expected_sq)) / std::fabs(to_double(expected_sq));
}

template <class S>
double touch_residual(const Cycle2<S>& horo, const Rational& p) {
  S touch = horo.l / horo.k;
  S want = from_rational<S>(p);
  if constexpr (is_exact_scalar_v<S>) {
    if (touch == want) return 0.0;
  }
  return std::fabs(to_double(touch) - to_double(want)) / (1.0 + std::fabs(to_double(want)));
}

}  // namespace detail

/// Runs every per-link property of the arrangement on a built chain: touch
/// points against the exact convergents, the pairwise tangency/orthogonality,
/// connecting-cycle incidences and orthogonalities, the radius formulas, and
/// the mixed-chain radius/angle facts. Failures are report entries, never
/// exceptions.
template <class S>
VerificationReport verify_chain(const Chain<S>& chain, double tol = 1e-12) {
  VerificationReport report;
  auto add = [&](std::size_t link, std::string name, double residual) {
    report.checks.push_back({link, std::move(name), residual, residual <= tol});
  };
  const Arrangement arr = chain.arrangement;
  for (const auto& link : chain.links) {
    const S tp = detail::from_rational<S>(link.touch_prev);
    const S tc = detail::from_rational<S>(link.touch_curr);
    add(link.index, "touch-prev", detail::touch_residual(link.horo_prev, link.touch_prev));
    add(link.index, "touch-curr", detail::touch_residual(link.horo_curr, link.touch_curr));

    // Radii: |det| seed/(2 Q^2) with seed 1 for the tangent arrangement and
    // sqrt(2) for the others, compared through the exact squares. The det
    // factor accounts for the 1/sqrt(|det|) matrix normalization and is 1 for
    // simple continued fractions.
    const S qp2 = detail::from_rational<S>(link.q_prev * link.q_prev);
    const S qc2 = detail::from_rational<S>(link.q_curr * link.q_curr);
    const S det2 = detail::from_rational<S>(link.det * link.det);
    const S scale_sq =
        arr == Arrangement::Tangent ? S(1) : S(2);  // (m0/2)^2 with m0 = 2 or sqrt(2)
    add(link.index, "radius-prev",
        detail::radius_sq_residual(link.horo_prev, S(det2 * scale_sq / (4 * qp2 * qp2))));
    add(link.index, "radius-curr",
        detail::radius_sq_residual(link.horo_curr, S(det2 * scale_sq / (4 * qc2 * qc2))));

    if (arr == Arrangement::Tangent) {
      add(link.index, "tangency", detail::tangency_residual(link.horo_prev, link.horo_curr));
      // Contact point of the two horocycles: rational combination of the
      // touch points, ((P'Q' + PQ)/(Q'^2 + Q^2), 1/(Q'^2 + Q^2)) up to the
      // integer part shift; derived from centers and radii below.
      S r1 = link.horo_prev.n / link.horo_prev.k;
      S r2 = link.horo_curr.n / link.horo_curr.k;
      S u = (r2 * tp + r1 * tc) / (r1 + r2);
      S v = 2 * r1 * r2 / (r1 + r2);
      add(link.index, "contact-incidence", detail::incidence_residual(link.connecting, u, v));
    } else {
      add(link.index, "orthogonality",
          detail::orthogonality_residual(link.horo_prev, link.horo_curr));
    }

    add(link.index, "incidence-prev", detail::incidence_residual(link.connecting, tp, S(0)));
    add(link.index, "incidence-curr", detail::incidence_residual(link.connecting, tc, S(0)));

    if (arr != Arrangement::Mixed) {
      add(link.index, "connecting-orth-prev",
          detail::orthogonality_residual(link.connecting, link.horo_prev));
      add(link.index, "connecting-orth-curr",
          detail::orthogonality_residual(link.connecting, link.horo_curr));
      add(link.index, "connecting-orth-axis",
          detail::orthogonality_residual(link.connecting, Cycle2<S>{S(0), S(0), S(1), S(0)}));
    } else {
      // Connecting radius is the geometric mean of the horocycle radii,
      // (sqrt(2)/2) / |Q_n Q_{n-1}|.
      const S qq = detail::from_rational<S>(link.q_prev * link.q_curr);
      add(link.index, "connecting-radius",
          detail::radius_sq_residual(link.connecting, S(det2 / (2 * qq * qq))));
      // The connecting cycle crosses the axis at 45 degrees: center height
      // over radius equals 1/sqrt(2).
      S h = link.connecting.n / link.connecting.k;
      S rsq = cycle_discriminant(link.connecting) / (link.connecting.k * link.connecting.k);
      double angle_residual;
      if constexpr (is_exact_scalar_v<S>) {
        angle_residual =
            (2 * h * h == rsq && sign(h) > 0)
                ? 0.0
                : std::fabs(std::acos(std::fabs(to_double(h)) / std::sqrt(to_double(rsq))) -
                            std::acos(1.0 / std::sqrt(2.0)));
      } else {
        angle_residual =
            std::fabs(std::acos(std::fabs(to_double(h)) / std::sqrt(to_double(rsq))) -
                      std::acos(1.0 / std::sqrt(2.0)));
      }
      add(link.index, "crossing-angle", angle_residual);
      if (link.mirror_connecting)
        add(link.index, "mirror-incidence",
            detail::incidence_residual(*link.mirror_connecting, tp, S(0)));
    }
  }
  return report;
}

}  // namespace cfcycles
