#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "cfcycles/svg.hpp"

using namespace cfcycles;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

std::size_t count_substr(const std::string& hay, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  return count;
}

std::vector<Multivector<QSqrt2>> cl1_coeffs(const std::vector<long>& bs) {
  std::vector<Multivector<QSqrt2>> out;
  for (long b : bs)
    out.push_back(Multivector<QSqrt2>::vector(1, std::vector<QSqrt2>{QSqrt2(q(b))}));
  return out;
}

}  // namespace

TEST_CASE("svg output is deterministic") {
  auto cf = coefficient_source(NamedSource::E, 5);
  auto chain = build_chain<Rational>(cf, Arrangement::Tangent, 5);
  RenderConfig cfg;
  std::string a = render_chain_svg(chain, cfg);
  std::string b = render_chain_svg(chain, cfg);
  CHECK(a == b);
  CHECK(a.find("<svg xmlns") == 0);
  CHECK(a.find("class=\"axis\"") != std::string::npos);
  CHECK(a.find("class=\"seed-line\"") != std::string::npos);
  CHECK(count_substr(a, "class=\"horocycle\"") + count_substr(a, "class=\"dot\"") >= 6);
}

TEST_CASE("small circles become dots under the pixel cutoff") {
  auto cf = coefficient_source(NamedSource::Pi, 4);
  auto chain = build_chain<Rational>(cf, Arrangement::Tangent, 4);
  RenderConfig cfg;
  cfg.width = 800;
  cfg.height = 500;
  cfg.viewport = {{3.0, 3.2, 0.0, 0.125}};
  std::string svg = render_chain_svg(chain, cfg);
  // At 4000 px/unit the horocycle at 333/106 has radius 1/22472 unit, i.e.
  // about 0.18 px, well under the 0.5 px cutoff; later ones are smaller.
  CHECK(count_substr(svg, "class=\"dot\"") >= 3);
  // The big circles at 3 and 22/7 survive as real circles.
  CHECK(count_substr(svg, "class=\"horocycle\"") >= 2);
}

TEST_CASE("explicit viewport scales circle radii") {
  auto cf = ContinuedFraction::simple(std::nullopt, {q(1)});
  auto chain = build_chain<Rational>(cf, Arrangement::Tangent, 1);
  RenderConfig cfg;
  cfg.width = 400;
  cfg.height = 400;
  cfg.viewport = {{-1.0, 1.0, 0.0, 2.0}};
  std::string svg = render_chain_svg(chain, cfg);
  // Scale is min(400/2, 400/2) = 200 px per unit; the horocycle at 0 has
  // radius 1/2 so its on-screen radius is 100.
  CHECK(svg.find("r=\"100\"") != std::string::npos);
}

TEST_CASE("mixed chains draw the mirror dashed") {
  auto cf = coefficient_source(NamedSource::E, 4);
  auto chain = build_chain<QSqrt2>(cf, Arrangement::Mixed, 4);
  std::string svg = render_chain_svg(chain, RenderConfig{});
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(count_substr(svg, "class=\"connecting mirror\"") == 4);
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "width = 640\n"
      "height = 480  # pixels\n"
      "min_radius_px = 1.0\n"
      "viewport = 0 1 0 1\n");
  RenderConfig cfg = parse_render_config(in);
  CHECK(cfg.width == 640);
  CHECK(cfg.height == 480);
  CHECK(cfg.min_radius_px == 1.0);
  REQUIRE(cfg.viewport.has_value());
  CHECK((*cfg.viewport)[1] == 1.0);

  std::istringstream bad("speed = 11\n");
  CHECK_THROWS_AS(parse_render_config(bad), ParseError);
  std::istringstream negative("width = -4\n");
  CHECK_THROWS_AS(parse_render_config(negative), ParseError);
  std::istringstream flipped("viewport = 1 0 0 1\n");
  CHECK_THROWS_AS(parse_render_config(flipped), ParseError);
}

TEST_CASE("empty chains cannot be rendered") {
  Chain<double> chain;
  CHECK_THROWS_AS(render_chain_svg(chain, RenderConfig{}), std::invalid_argument);
}

TEST_CASE("section plane of a Cl(1) chain matches the planar chain") {
  // The Cl(1) inversion x -> (x+b)^{-1} acts on the e1 axis as the classical
  // fraction with partial numerators -1, so the section view must reproduce
  // the 2D chain built from those terms.
  std::vector<long> bs = {2, 3, 4, 5};
  auto nd_chain = build_chain_nd(cl1_coeffs(bs), Arrangement::Orthogonal, 4);
  auto view = section_plane_view(to_double_nd_chain(nd_chain));

  std::vector<CfTerm> terms;
  for (long b : bs) terms.emplace_back(q(-1), q(b));
  ContinuedFraction cf(std::nullopt, terms);
  auto chain2d = build_chain<QSqrt2>(cf, Arrangement::Orthogonal, 4);

  // Collect (radius, height) pairs per role and compare within 1e-9.
  std::vector<std::pair<double, double>> nd_h, nd_c, d2_h, d2_c;
  for (const auto& c : view) {
    if (c.role == "horocycle")
      nd_h.emplace_back(c.r, c.v);
    else if (c.role == "connecting")
      nd_c.emplace_back(c.r, c.v);
  }
  auto circle_of = [](const Cycle2<QSqrt2>& cyc) {
    auto geom = std::get<CircleGeometry>(center_radius(cyc));
    return std::pair<double, double>(geom.radius, geom.cv);
  };
  d2_h.push_back(circle_of(chain2d.links.front().horo_prev));
  for (const auto& link : chain2d.links) d2_h.push_back(circle_of(link.horo_curr));
  for (const auto& link : chain2d.links) d2_c.push_back(circle_of(link.connecting));

  REQUIRE(nd_h.size() == d2_h.size());
  REQUIRE(nd_c.size() == d2_c.size());
  for (std::size_t i = 0; i < nd_h.size(); ++i) {
    CHECK(nd_h[i].first == doctest::Approx(d2_h[i].first).epsilon(1e-9));
    CHECK(nd_h[i].second == doctest::Approx(d2_h[i].second).epsilon(1e-9));
  }
  for (std::size_t i = 0; i < nd_c.size(); ++i)
    CHECK(nd_c[i].first == doctest::Approx(d2_c[i].first).epsilon(1e-9));
}

TEST_CASE("section plane of a Cl(2) chain keeps in-plane tangency") {
  // b_j = j e1 + e2 wanders through the plane; the tangent arrangement's
  // consecutive section circles still touch, measured in plane coordinates.
  std::vector<Multivector<double>> bs;
  for (int j = 1; j <= 4; ++j)
    bs.push_back(Multivector<double>::vector(2, std::vector<double>{double(j), 1.0}));
  auto chain = build_chain_nd(bs, Arrangement::Tangent, 4);
  auto view = section_plane_view(chain);
  std::vector<SectionCircle> horos;
  for (const auto& c : view)
    if (c.role == "horocycle") horos.push_back(c);
  REQUIRE(horos.size() >= 2);
  // Within each link the two horocycles are tangent in the section plane;
  // the pair sharing a link is (horos[i], horos[i+1]) for the first link.
  const auto& h0 = horos[0];
  const auto& h1 = horos[1];
  double dist = std::hypot(h0.u - h1.u, h0.v - h1.v);
  CHECK(dist == doctest::Approx(h0.r + h1.r).epsilon(1e-9));
}

TEST_CASE("single-link section view holds one horocycle pair and a connecting circle") {
  auto chain = build_chain_nd(cl1_coeffs({3}), Arrangement::Orthogonal, 1);
  auto view = section_plane_view(chain);
  std::size_t horos = 0, connecting = 0;
  for (const auto& c : view) {
    if (c.role == "horocycle") ++horos;
    if (c.role == "connecting") ++connecting;
  }
  CHECK(horos == 2);
  CHECK(connecting == 1);
}

TEST_CASE("degenerate section views are rejected") {
  NdChain<double> chain;
  chain.base_dim = 2;
  NdChainLink<double> link;
  link.index = 1;
  link.horo_prev = {1.0, Multivector<double>::vector(3, std::vector<double>{0, 0, 1}), 0.0};
  link.horo_curr = link.horo_prev;
  link.connecting = link.horo_prev;
  link.touch_prev = {0.0, 0.0};
  link.touch_curr = {0.0, 0.0};
  chain.links.push_back(link);
  CHECK_THROWS_AS(section_plane_view(chain), DegenerateView);
}

TEST_CASE("nd section svg renders deterministically") {
  auto chain = build_chain_nd(cl1_coeffs({2, 3, 4}), Arrangement::Mixed, 3);
  auto dchain = to_double_nd_chain(chain);
  RenderConfig cfg;
  std::string a = render_section_plane(dchain, cfg);
  std::string b = render_section_plane(dchain, cfg);
  CHECK(a == b);
  CHECK(a.find("class=\"connecting mirror\"") != std::string::npos);
}
