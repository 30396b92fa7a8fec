#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cfcycles/cycle.hpp"

using namespace cfcycles;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

using CycleQ = Cycle2<Rational>;
using CycleD = Cycle2<double>;
using MoebQ = MoebiusMat2<Rational>;
using MoebD = MoebiusMat2<double>;

/// Random integer matrix with determinant +-1, built from term factors.
MoebQ random_unimodular(std::mt19937& rng, int max_len = 4) {
  std::uniform_int_distribution<int> b_dist(-3, 3);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  std::uniform_int_distribution<int> len_dist(1, max_len);
  Rational a(1), b(0), c(0), d(1);
  const int len = len_dist(rng);
  for (int i = 0; i < len; ++i) {
    // Right-multiply by the term factor (0 fa; 1 fb).
    Rational fa = sign_dist(rng) ? q(1) : q(-1);
    Rational fb = q(b_dist(rng));
    Rational na = b, nb = a * fa + b * fb;
    Rational nc = d, nd = c * fa + d * fb;
    a = na;
    b = nb;
    c = nc;
    d = nd;
  }
  return MoebQ::make(a, b, c, d);
}

CycleQ random_cycle(std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(-4, 4);
  while (true) {
    CycleQ c{q(dist(rng)), q(dist(rng)), q(dist(rng)), q(dist(rng))};
    if (!(c == CycleQ{})) return c;
  }
}

MoebD to_double_mat(const MoebQ& m) {
  return {to_double(m.a), to_double(m.b), to_double(m.c), to_double(m.d), m.delta};
}

CycleD circle_from(double cu, double cv, double r) {
  return {1.0, cu, cv, cu * cu + cv * cv - r * r};
}

}  // namespace

TEST_CASE("cycle matrix form and back") {
  CycleQ axis{0, 0, 1, 0};
  auto m = to_cycle_matrix(axis);
  CHECK(m.a11 == Cplx<Rational>{0, 1});
  CHECK(m.a12 == Cplx<Rational>{0, 0});
  CHECK(m.a21 == Cplx<Rational>{0, 0});
  CHECK(m.a22 == Cplx<Rational>{0, 1});

  CycleQ unit{1, 0, 0, -1};
  auto mu = to_cycle_matrix(unit);
  CHECK(mu.a11 == Cplx<Rational>{0, 0});
  CHECK(mu.a12 == Cplx<Rational>{1, 0});
  CHECK(mu.a21 == Cplx<Rational>{1, 0});
  CHECK(mu.a22 == Cplx<Rational>{0, 0});

  CycleQ c{1, 2, 1, 4};
  auto mc = to_cycle_matrix(c);
  CHECK(mc.a11 == Cplx<Rational>{2, 1});
  CHECK(mc.a12 == Cplx<Rational>{-4, 0});
  CHECK(mc.a21 == Cplx<Rational>{1, 0});
  CHECK(mc.a22 == Cplx<Rational>{-2, 1});

  for (const CycleQ& x : {axis, unit, c}) CHECK(from_cycle_matrix(to_cycle_matrix(x)) == x);
}

TEST_CASE("from_cycle_matrix rejects off-shape matrices") {
  CycleMat2<Rational> bad = to_cycle_matrix(CycleQ{1, 2, 1, 4});
  bad.a21.im = 1;  // k must stay real
  CHECK_THROWS_AS(from_cycle_matrix(bad), std::invalid_argument);
  CycleMat2<double> badd = to_cycle_matrix(CycleD{1, 2, 1, 4});
  badd.a22.re = -1.9;  // trace no longer purely imaginary
  CHECK_THROWS_AS(from_cycle_matrix(badd), std::invalid_argument);
}

TEST_CASE("moebius action on sphere points") {
  auto m = MoebQ::make(q(1), q(15), q(7), q(106));
  auto zero = apply_moebius_point(m, SpherePoint<Rational>::at(q(0), q(0)));
  REQUIRE(!zero.is_infinity());
  CHECK(zero.z->re == q(15, 106));
  CHECK(zero.z->im == 0);
  auto inf = apply_moebius_point(m, SpherePoint<Rational>::infinity());
  REQUIRE(!inf.is_infinity());
  CHECK(inf.z->re == q(1, 7));

  auto id = MoebQ::identity();
  auto fixed = apply_moebius_point(id, SpherePoint<Rational>::at(q(5), q(2)));
  CHECK(fixed.z->re == q(5));
  CHECK(fixed.z->im == q(2));

  // The pole -d/c goes to infinity.
  auto pole = apply_moebius_point(m, SpherePoint<Rational>::at(q(-106, 7), q(0)));
  CHECK(pole.is_infinity());
}

TEST_CASE("cycle_image examples") {
  auto m = MoebQ::make(q(2), q(1), q(1), q(1));
  CycleQ horo_line{0, 0, 1, 1};
  CHECK(cycle_image(m, horo_line) == CycleQ{1, 2, 1, 4});

  CHECK(cycle_image(MoebQ::identity(), CycleQ{3, -1, 2, 5}) == CycleQ{3, -1, 2, 5});

  auto conv = MoebQ::make(q(1), q(15), q(7), q(106));
  CHECK(cycle_image(conv, CycleQ{0, 0, 1, 2}) == CycleQ{98, 14, 1, 2});
}

TEST_CASE("inner product closed form") {
  CycleQ unit{1, 0, 0, -1};
  CHECK(inner_product(unit, unit) == q(2));
  CycleQ axis{0, 0, 1, 0};
  CHECK(inner_product(unit, axis) == q(0));
  CHECK(inner_product(CycleQ{2, 0, 1, 0}, CycleQ{2, 2, 1, 2}) == q(-2));
}

TEST_CASE("trace form equals closed form exactly") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    CycleQ c1 = random_cycle(rng);
    CycleQ c2 = random_cycle(rng);
    CHECK(inner_product(c1, c2) == inner_product_trace(c1, c2));
  }
}

TEST_CASE("orthogonality examples") {
  const double r = std::sqrt(2.0) / 2.0;
  CycleD h0 = circle_from(0, r, r);
  CycleD h1 = circle_from(1, r, r);
  CHECK(is_orthogonal(h0, h1, 1e-12));
  CycleD g0 = circle_from(0, 0.5, 0.5);
  CycleD g1 = circle_from(1, 0.5, 0.5);
  CHECK(!is_orthogonal(g0, g1, 1e-12));
  CHECK(is_orthogonal(CycleQ{0, 0, 1, 0}, CycleQ{0, 1, 0, 0}));
}

TEST_CASE("tangency examples") {
  CHECK(is_tangent(CycleQ{2, 0, 1, 0}, CycleQ{2, 2, 1, 2}));
  CHECK(!is_tangent(CycleQ{1, 0, 0, -1}, CycleQ{0, 0, 1, 0}));
  CHECK(!is_tangent(CycleQ{1, 0, 1, 0}, CycleQ{1, 3, 1, 9}));
  // Point cycles and imaginary cycles are rejected.
  CHECK_THROWS_AS(is_tangent(CycleQ{1, 0, 0, 0}, CycleQ{2, 0, 1, 0}), ImaginaryCycle);
  CHECK_THROWS_AS(is_tangent(CycleQ{1, 0, 0, 1}, CycleQ{2, 0, 1, 0}), ImaginaryCycle);
}

TEST_CASE("reflect is the mirror involution") {
  CHECK(reflect(CycleQ{1, 0, 1, 0}) == CycleQ{1, 0, -1, 0});
  CHECK(reflect(CycleQ{0, 0, 1, 0}) == CycleQ{0, 0, -1, 0});
  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    CycleQ c = random_cycle(rng);
    CHECK(reflect(reflect(c)) == c);
  }
}

TEST_CASE("reflect commutes with real moebius actions") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    MoebQ m = random_unimodular(rng);
    CycleQ c = random_cycle(rng);
    CHECK(cycle_image(m, reflect(c)) == reflect(cycle_image(m, c)));
  }
}

TEST_CASE("center and radius decoding") {
  auto g = center_radius(CycleQ{98, 14, 1, 2});
  REQUIRE(std::holds_alternative<CircleGeometry>(g));
  auto circ = std::get<CircleGeometry>(g);
  CHECK(circ.cu == doctest::Approx(1.0 / 7).epsilon(1e-14));
  CHECK(circ.cv == doctest::Approx(1.0 / 98).epsilon(1e-14));
  CHECK(circ.radius == doctest::Approx(1.0 / 98).epsilon(1e-14));

  auto unit = std::get<CircleGeometry>(center_radius(CycleD{1, 0, 0, -1}));
  CHECK(unit.cu == 0);
  CHECK(unit.cv == 0);
  CHECK(unit.radius == 1);

  auto line = center_radius(CycleQ{0, 0, 1, 2});
  REQUIRE(std::holds_alternative<LineGeometry>(line));
  auto lg = std::get<LineGeometry>(line);
  CHECK(lg.lu == 0);
  CHECK(lg.lv == 1);
  CHECK(lg.offset == 1);

  CHECK_THROWS_AS(center_radius(CycleQ{1, 0, 0, 1}), ImaginaryCycle);
}

TEST_CASE("arithmetic in the sqrt2 field") {
  const QSqrt2 r2 = QSqrt2::sqrt2();
  CHECK(r2 * r2 == QSqrt2(2));
  CHECK((QSqrt2(1) + r2) * (QSqrt2(1) - r2) == QSqrt2(-1));
  CHECK(QSqrt2(1) / r2 == QSqrt2(Rational(0), Rational(1, 2)));
  CHECK_THROWS_AS(QSqrt2(1) / QSqrt2(0), std::domain_error);

  // Signs of mixed-sign combinations come from squaring, exactly.
  CHECK(sign(QSqrt2(Rational(1), Rational(-1))) < 0);   // 1 - sqrt2
  CHECK(sign(QSqrt2(Rational(3), Rational(-2))) > 0);   // 9 > 8
  CHECK(sign(QSqrt2(Rational(-3), Rational(2))) < 0);
  CHECK(sign(QSqrt2(Rational(-1), Rational(1))) > 0);   // sqrt2 - 1
  CHECK(sign(QSqrt2(0)) == 0);
  CHECK(QSqrt2(Rational(1), Rational(1)) > QSqrt2(2));  // 1 + sqrt2 > 2

  CHECK(to_double(r2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(qsqrt2_str(QSqrt2(Rational(1, 2), Rational(-3))) == "1/2-3*sqrt2");
  CHECK(qsqrt2_str(r2) == "1*sqrt2");
}

TEST_CASE("cycle serialization") {
  CHECK(cycle_str(CycleQ{1, 2, 1, 4}) == "1 2 1 4");
  CHECK(cycle_str(CycleQ{1, q(-1, 2), 0, q(22, 7)}) == "1 -1/2 0 22/7");
  CHECK(cycle_str(CycleD{1, 0.5, 0, 0.1}) == "1 0.5 0 0.1");
}

TEST_CASE("moebius covariance of loci") {
  std::mt19937 rng(14);
  std::uniform_real_distribution<double> angle(0, 2 * 3.14159265358979);
  for (int trial = 0; trial < 100; ++trial) {
    MoebQ mq = random_unimodular(rng);
    MoebD m = to_double_mat(mq);
    CycleQ cq = random_cycle(rng);
    if (sign(cycle_discriminant(cq)) <= 0) continue;  // need a real locus to sample
    CycleD c = to_double_cycle(cq);
    CycleD image = cycle_image(m, c);
    auto geom = center_radius(c);
    for (int p = 0; p < 16; ++p) {
      double u, v;
      if (std::holds_alternative<CircleGeometry>(geom)) {
        auto circ = std::get<CircleGeometry>(geom);
        double t = angle(rng);
        u = circ.cu + circ.radius * std::cos(t);
        v = circ.cv + circ.radius * std::sin(t);
      } else {
        auto lg = std::get<LineGeometry>(geom);
        double nrm = std::hypot(lg.lu, lg.lv);
        double bu = lg.lu / nrm * lg.offset / nrm, bv = lg.lv / nrm * lg.offset / nrm;
        double t = std::tan(angle(rng) / 2);
        u = bu - lg.lv / nrm * t;
        v = bv + lg.lu / nrm * t;
      }
      auto w = apply_moebius_point(m, SpherePoint<double>::at(u, v));
      if (w.is_infinity()) continue;
      double zu = w.z->re, zv = w.z->im;
      double residual = cycle_eval(image, zu, zv);
      CHECK(std::fabs(residual) <= 1e-8 * (1 + zu * zu + zv * zv));
    }
  }
}

TEST_CASE("inner product is moebius invariant") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    MoebQ mq = random_unimodular(rng);
    CycleQ c1 = random_cycle(rng);
    CycleQ c2 = random_cycle(rng);
    // Exact invariance over the rationals.
    CHECK(inner_product(cycle_image(mq, c1), cycle_image(mq, c2)) == inner_product(c1, c2));
    // And within 1e-9 relative through floating point.
    MoebD m = to_double_mat(mq);
    double before = inner_product(to_double_cycle(c1), to_double_cycle(c2));
    double after =
        inner_product(cycle_image(m, to_double_cycle(c1)), cycle_image(m, to_double_cycle(c2)));
    CHECK(std::fabs(after - before) <= 1e-9 * (1 + std::fabs(before)));
  }
}

TEST_CASE("orthogonality agrees with the metric test") {
  std::mt19937 rng(16);
  std::uniform_real_distribution<double> coord(-3, 3);
  std::uniform_real_distribution<double> rad(0.1, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    double cu1 = coord(rng), cv1 = coord(rng), cu2 = coord(rng), cv2 = coord(rng);
    double d2 = (cu1 - cu2) * (cu1 - cu2) + (cv1 - cv2) * (cv1 - cv2);
    if (d2 < 0.25) continue;
    double r1 = rad(rng);
    if (r1 * r1 >= d2 - 0.01) continue;
    // Exactly orthogonal pair by the metric: |c1 - c2|^2 = r1^2 + r2^2.
    double r2 = std::sqrt(d2 - r1 * r1);
    CHECK(is_orthogonal(circle_from(cu1, cv1, r1), circle_from(cu2, cv2, r2), 1e-9));
    CHECK(!is_orthogonal(circle_from(cu1, cv1, r1), circle_from(cu2, cv2, r2 * 1.1), 1e-9));
  }
}

TEST_CASE("tangency agrees with the distance test") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coord(-3, 3);
  std::uniform_real_distribution<double> rad(0.1, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    double cu1 = coord(rng), cv1 = coord(rng);
    double r1 = rad(rng), r2 = rad(rng);
    double angle = coord(rng);
    // Externally tangent pair: centers exactly r1 + r2 apart.
    double cu2 = cu1 + (r1 + r2) * std::cos(angle);
    double cv2 = cv1 + (r1 + r2) * std::sin(angle);
    CHECK(is_tangent(circle_from(cu1, cv1, r1), circle_from(cu2, cv2, r2), 1e-9));
    double cu3 = cu1 + (r1 + r2 + 0.2) * std::cos(angle);
    double cv3 = cv1 + (r1 + r2 + 0.2) * std::sin(angle);
    CHECK(!is_tangent(circle_from(cu1, cv1, r1), circle_from(cu3, cv3, r2), 1e-9));
  }
}
