#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfcycles/multivector.hpp"

using namespace cfcycles;

namespace {

using MvQ = Multivector<Rational>;

Rational q(long num, long den = 1) { return Rational(num, den); }

MvQ e(unsigned dim, unsigned i) { return MvQ::basis_vector(dim, i); }

MvQ random_mv(std::mt19937& rng, unsigned dim) {
  std::uniform_int_distribution<int> dist(-3, 3);
  MvQ x(dim);
  for (std::uint32_t m = 0; m < x.size(); ++m) x.set_coeff(m, q(dist(rng)));
  return x;
}

MvQ random_vector(std::mt19937& rng, unsigned dim) {
  std::uniform_int_distribution<int> dist(-3, 3);
  std::vector<Rational> comps(dim);
  for (auto& c : comps) c = q(dist(rng));
  return MvQ::vector(dim, comps);
}

}  // namespace

TEST_CASE("generator relations") {
  for (unsigned dim = 1; dim <= 5; ++dim) {
    for (unsigned i = 1; i <= dim; ++i) {
      for (unsigned j = 1; j <= dim; ++j) {
        MvQ anti = e(dim, i) * e(dim, j) + e(dim, j) * e(dim, i);
        MvQ want = i == j ? MvQ::scalar(dim, q(-2)) : MvQ(dim);
        CHECK(anti == want);
      }
    }
  }
}

TEST_CASE("geometric product basics") {
  CHECK(e(2, 1) * e(2, 1) == MvQ::scalar(2, q(-1)));
  MvQ e12 = e(2, 1) * e(2, 2);
  CHECK(e12.coeff(0b11) == 1);
  CHECK(e(2, 2) * e(2, 1) == -e12);
  MvQ s = e(2, 1) + e(2, 2);
  CHECK(s * s == MvQ::scalar(2, q(-2)));
}

TEST_CASE("product is associative") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    MvQ x = random_mv(rng, 3), y = random_mv(rng, 3), z = random_mv(rng, 3);
    CHECK((x * y) * z == x * (y * z));
  }
}

TEST_CASE("reversion and conjugation") {
  MvQ e12 = e(2, 1) * e(2, 2);
  CHECK(e12.reversed() == -e12);
  CHECK(e(2, 1).conjugated() == -e(2, 1));
  CHECK((e(2, 1) * (-e(2, 1))).scalar_part() == 1);
  // Vectors are fixed by reversion.
  std::mt19937 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    MvQ v = random_vector(rng, 4);
    CHECK(v.reversed() == v);
    CHECK(v.conjugated() == -v);
  }
}

TEST_CASE("reversion and conjugation are anti-automorphisms") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    MvQ x = random_mv(rng, 3), y = random_mv(rng, 3);
    CHECK((x * y).reversed() == y.reversed() * x.reversed());
    CHECK((x * y).conjugated() == y.conjugated() * x.conjugated());
  }
}

TEST_CASE("grade signs by residue mod 4") {
  // Blade of grade g flips under reversion iff g = 2, 3 (mod 4) and under
  // conjugation iff g = 1, 2 (mod 4).
  unsigned dim = 5;
  std::uint32_t blades[] = {0b0, 0b1, 0b11, 0b111, 0b1111, 0b11111};
  int rev_sign[] = {1, 1, -1, -1, 1, 1};
  int conj_sign[] = {1, -1, -1, 1, 1, -1};
  for (int g = 0; g <= 5; ++g) {
    MvQ x(dim);
    x.set_coeff(blades[g], q(1));
    CHECK(x.reversed().coeff(blades[g]) == rev_sign[g]);
    CHECK(x.conjugated().coeff(blades[g]) == conj_sign[g]);
  }
}

TEST_CASE("grade projection and scalar part") {
  MvQ x = MvQ::scalar(3, q(5)) + e(3, 1) + e(3, 1) * e(3, 2);
  CHECK(x.scalar_part() == 5);
  CHECK(x.grade(0) == MvQ::scalar(3, q(5)));
  CHECK(x.grade(1) == e(3, 1));
  CHECK(x.grade(2) == e(3, 1) * e(3, 2));
  CHECK(x.grade(3) == MvQ(3));
  CHECK(!x.is_grade(1));
  CHECK(e(3, 2).is_grade(1));
  CHECK(x.has_pure_parity() == false);
  CHECK((e(3, 1) * e(3, 2)).has_pure_parity());
}

TEST_CASE("vector inverse") {
  CHECK(vector_inverse(e(2, 1)) == -e(2, 1));
  MvQ three_e2 = q(3) * e(2, 2);
  CHECK(vector_inverse(three_e2) == q(-1, 3) * e(2, 2));
  MvQ s = e(2, 1) + e(2, 2);
  CHECK(vector_inverse(s) == q(-1, 2) * s);
  std::mt19937 rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    MvQ v = random_vector(rng, 4);
    if (v.is_zero()) continue;
    CHECK(v * vector_inverse(v) == MvQ::scalar(4, q(1)));
  }
  CHECK_THROWS_AS(vector_inverse(MvQ(3)), std::invalid_argument);
  CHECK_THROWS_AS(vector_inverse(MvQ::scalar(3, q(2))), std::invalid_argument);
}

TEST_CASE("norms of vector products are nonnegative reals") {
  std::mt19937 rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    MvQ prod = MvQ::scalar(3, q(1));
    std::uniform_int_distribution<int> len(1, 4);
    int n = len(rng);
    for (int i = 0; i < n; ++i) prod = prod * random_vector(rng, 3);
    MvQ nn = prod * prod.conjugated();
    CHECK(nn.is_grade(0));
    CHECK(sign(nn.scalar_part()) >= 0);
  }
}

TEST_CASE("top generator anticommutes with the base vectors") {
  unsigned dim = 4;  // Cl(3+1)
  std::mt19937 rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    MvQ x = random_vector(rng, 3).lifted(dim);
    MvQ top = e(dim, dim);
    CHECK(top * x == -(x * top));
  }
  // For a product of base vectors d: e_{n+1} conj(d) = reverse(d) e_{n+1}.
  for (int trial = 0; trial < 30; ++trial) {
    MvQ d = MvQ::scalar(3, q(1));
    std::uniform_int_distribution<int> len(0, 4);
    int n = len(rng);
    for (int i = 0; i < n; ++i) d = d * random_vector(rng, 3);
    MvQ dl = d.lifted(dim);
    MvQ top = e(dim, dim);
    CHECK(top * dl.conjugated() == dl.reversed() * top);
  }
}

TEST_CASE("dimension handling") {
  CHECK_THROWS_AS(MvQ(9), std::invalid_argument);
  CHECK_THROWS_AS(e(2, 1) * e(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(MvQ::basis_vector(2, 3), std::invalid_argument);
  MvQ x = e(2, 1);
  MvQ lifted = x.lifted(4);
  CHECK(lifted.dim() == 4);
  CHECK(lifted.coeff(0b1) == 1);
  CHECK_THROWS_AS(lifted.lifted(2), std::invalid_argument);
}

TEST_CASE("serialization") {
  CHECK(blade_name(0) == "1");
  CHECK(blade_name(0b101) == "e1e3");
  CHECK(mv_str(MvQ(2)) == "0");
  MvQ x = MvQ::scalar(3, q(1)) + q(-2) * e(3, 1) + q(3, 2) * (e(3, 1) * e(3, 3));
  CHECK(mv_str(x) == "1+-2*e1+3/2*e1e3");
  Multivector<double> y(2);
  y.set_coeff(0b10, 0.5);
  CHECK(mv_str(y) == "0.5*e2");
}
