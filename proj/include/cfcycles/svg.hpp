#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfcycles/chain.hpp"
#include "cfcycles/clifford.hpp"

namespace cfcycles {

/// Deterministic rendering parameters: identical input and config produce
/// byte-identical SVG. Numbers are printed with 6 significant digits in
/// fixed notation.
struct RenderConfig {
  int width = 800;
  int height = 500;
  /// umin, umax, vmin, vmax; unset means auto-fit with 5% margin.
  std::optional<std::array<double, 4>> viewport;
  double stroke_width = 1.5;
  /// Circles whose on-screen radius falls below this are drawn as dots.
  double min_radius_px = 0.5;
  double dot_radius_px = 1.2;
  double margin = 0.05;
};

/// Optional "key = value" config text: width, height, stroke_width,
/// min_radius_px, dot_radius_px, margin, viewport (four numbers).
RenderConfig parse_render_config(std::istream& in);

/// Geometry handed to the SVG writer: decoded circles/lines with style
/// classes, plus bare points that only stretch the auto-fit viewport.
/// Geometry is decoded from exact scalars where the chain has them.
struct SceneItem {
  std::string cls;  // "seed-line", "horocycle", "connecting", "connecting mirror"
  CycleGeometry geom;
};

struct ChainScene {
  std::vector<SceneItem> items;
  std::vector<std::pair<double, double>> points;
};

std::string render_scene_svg(const ChainScene& scene, const RenderConfig& config);

/// Drawn cycles in order: the seed line (the horocycle at infinity), the
/// first previous horocycle, each link's current horocycle, then the
/// connecting cycles and mixed-arrangement mirrors.
template <class S>
ChainScene chain_scene(const Chain<S>& chain) {
  if (chain.links.empty()) throw std::invalid_argument("cannot render an empty chain");
  ChainScene scene;
  scene.items.push_back({"seed-line", center_radius(chain.seed_line)});
  scene.items.push_back({"horocycle", center_radius(chain.links.front().horo_prev)});
  for (const auto& link : chain.links)
    scene.items.push_back({"horocycle", center_radius(link.horo_curr)});
  for (const auto& link : chain.links) {
    scene.items.push_back({"connecting", center_radius(link.connecting)});
    if (link.mirror_connecting)
      scene.items.push_back({"connecting mirror", center_radius(*link.mirror_connecting)});
  }
  for (const auto& link : chain.links) {
    scene.points.emplace_back(to_double(link.touch_prev), 0.0);
    scene.points.emplace_back(to_double(link.touch_curr), 0.0);
  }
  return scene;
}

/// Fixed palette: horocycles alternate two hues, the connecting cycles use a
/// third, the real axis is black, mirror cycles are dashed.
template <class S>
std::string render_chain_svg(const Chain<S>& chain, const RenderConfig& config) {
  return render_scene_svg(chain_scene(chain), config);
}

/// One circle of a section-plane view, in plane coordinates (arc length along
/// the touch-point line, height above the base hyperplane).
struct SectionCircle {
  std::size_t link;
  std::string role;  // "horocycle", "connecting", "mirror"
  double u, v, r;
};

/// Cuts every chain cycle with the two-dimensional plane through consecutive
/// touch points orthogonal to the base hyperplane. Radii and centers are
/// decoded in the chain's own scalar before lowering. Spheres missing the
/// plane are omitted; coincident touch points raise DegenerateView.
template <class S>
std::vector<SectionCircle> section_plane_view(const NdChain<S>& chain) {
  std::vector<SectionCircle> out;
  const unsigned n = chain.base_dim;
  double arc = 0;
  for (const auto& link : chain.links) {
    const auto& t0 = link.touch_prev;
    const auto& t1 = link.touch_curr;
    S seg_sq{0};
    for (unsigned i = 0; i < n; ++i) seg_sq += (t1[i] - t0[i]) * (t1[i] - t0[i]);
    const double seglen = std::sqrt(to_double(seg_sq));
    if (!(seglen > 0)) throw DegenerateView("coincident touch points");

    auto cut = [&](const CycleND<S>& c, const std::string& role) {
      S rsq = cycle_nd_radius_sq(c);
      if (!(sign(rsq) > 0)) return;
      auto ctr = cycle_nd_center(c);
      // Plane coordinates: (arc length along the touch line, height). The
      // in-plane offset and the distance to the plane come from exact values.
      S along_num{0}, rel_sq{0};
      for (unsigned i = 0; i < n; ++i) {
        S rel = ctr[i] - t0[i];
        along_num += rel * (t1[i] - t0[i]);
        rel_sq += rel * rel;
      }
      double along = to_double(along_num) / seglen;
      double perp_sq = std::max(to_double(rel_sq) - along * along, 0.0);
      double cut_sq = to_double(rsq) - perp_sq;
      if (cut_sq <= 0) return;  // sphere misses the plane
      out.push_back({link.index, role, arc + along, to_double(ctr[n]), std::sqrt(cut_sq)});
    };
    if (link.index == chain.links.front().index) cut(link.horo_prev, "horocycle");
    cut(link.horo_curr, "horocycle");
    cut(link.connecting, "connecting");
    if (link.mirror_connecting) cut(*link.mirror_connecting, "mirror");
    arc += seglen;
  }
  return out;
}

template <class S>
std::string render_section_plane(const NdChain<S>& chain, const RenderConfig& config) {
  if (chain.links.empty()) throw std::invalid_argument("cannot render an empty chain");
  ChainScene scene;
  for (const auto& c : section_plane_view(chain)) {
    const std::string cls = c.role == "mirror"   ? "connecting mirror"
                            : c.role == "horocycle" ? "horocycle"
                                                    : "connecting";
    scene.items.push_back({cls, CircleGeometry{c.u, c.v, c.r}});
  }
  return render_scene_svg(scene, config);
}

/// Chain with every scalar lowered to double.
template <class S>
NdChain<double> to_double_nd_chain(const NdChain<S>& chain) {
  NdChain<double> out;
  out.arrangement = chain.arrangement;
  out.base_dim = chain.base_dim;
  auto conv_mv = [](const Multivector<S>& x) {
    Multivector<double> y(x.dim());
    for (std::uint32_t m = 0; m < x.size(); ++m) y.set_coeff(m, to_double(x.coeff(m)));
    return y;
  };
  auto conv_cycle = [&](const CycleND<S>& c) {
    return CycleND<double>{to_double(c.k), conv_mv(c.l), to_double(c.m)};
  };
  out.matrix = VersorMatrix<double>{conv_mv(chain.matrix.a), conv_mv(chain.matrix.b),
                                    conv_mv(chain.matrix.c), conv_mv(chain.matrix.d),
                                    to_double(chain.matrix.delta)};
  out.links.reserve(chain.links.size());
  for (const auto& l : chain.links) {
    NdChainLink<double> d;
    d.index = l.index;
    d.horo_prev = conv_cycle(l.horo_prev);
    d.horo_curr = conv_cycle(l.horo_curr);
    d.connecting = conv_cycle(l.connecting);
    if (l.mirror_connecting) d.mirror_connecting = conv_cycle(*l.mirror_connecting);
    for (const auto& t : l.touch_prev) d.touch_prev.push_back(to_double(t));
    for (const auto& t : l.touch_curr) d.touch_curr.push_back(to_double(t));
    out.links.push_back(std::move(d));
  }
  return out;
}

/// A chain built in the most exact scalar the inputs allow (rationals for the
/// tangent arrangement, Q(sqrt 2) otherwise, doubles when some |a_j| != 1):
/// the double view of the links, the verification report, the serialized
/// cycles, and the exactly decoded render scene.
struct PreparedChain {
  Chain<double> chain;
  VerificationReport report;
  std::string cycles_text;
  ChainScene scene;
};

PreparedChain prepare_chain(const ContinuedFraction& cf, Arrangement arr, std::size_t count,
                            double tol = 1e-12);

}  // namespace cfcycles
