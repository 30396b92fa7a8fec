#include "cfcycles/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

namespace cfcycles {

namespace {

constexpr const char* kHueA = "#d62728";  // horocycles, odd drawn index
constexpr const char* kHueB = "#2ca02c";  // horocycles, even drawn index
constexpr const char* kConnecting = "#1f77b4";
constexpr const char* kAxis = "#000000";

/// Fixed notation, 6 significant digits, trailing zeros trimmed.
std::string svg_num(double v) {
  if (!std::isfinite(v)) return "0";
  if (v == 0) return "0";
  double a = std::fabs(v);
  int decimals;
  if (a >= 1) {
    int before = static_cast<int>(std::floor(std::log10(a))) + 1;
    decimals = std::max(0, 6 - before);
  } else {
    decimals = 5 - static_cast<int>(std::floor(std::log10(a)));
  }
  decimals = std::clamp(decimals, 0, 17);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

struct WorldBox {
  double umin = 0, umax = 0, vmin = 0, vmax = 0;
  bool empty = true;

  void add(double u, double v) {
    if (empty) {
      umin = umax = u;
      vmin = vmax = v;
      empty = false;
      return;
    }
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  void add_circle(const CircleGeometry& c) {
    add(c.cu - c.radius, c.cv - c.radius);
    add(c.cu + c.radius, c.cv + c.radius);
  }
};

/// Uniform world-to-screen map; y is flipped.
struct Transform {
  double scale = 1, ox = 0, oy = 0;

  double x(double u) const { return ox + u * scale; }
  double y(double v) const { return oy - v * scale; }

  static Transform fit(const WorldBox& box, const RenderConfig& cfg) {
    double du = std::max(box.umax - box.umin, 1e-9);
    double dv = std::max(box.vmax - box.vmin, 1e-9);
    Transform t;
    t.scale = std::min(cfg.width / du, cfg.height / dv);
    double cx = (box.umin + box.umax) / 2, cy = (box.vmin + box.vmax) / 2;
    t.ox = cfg.width / 2.0 - cx * t.scale;
    t.oy = cfg.height / 2.0 + cy * t.scale;
    return t;
  }
};

std::string line_element(const LineGeometry& line, const std::string& cls,
                         const std::string& color, bool dashed, const Transform& t,
                         const RenderConfig& cfg) {
  // Walk the line's direction far enough to cross the whole viewport.
  double norm = std::hypot(line.lu, line.lv);
  if (norm == 0) return "";
  double pu = line.lu / norm * (line.offset / norm);
  double pv = line.lv / norm * (line.offset / norm);
  double du = -line.lv / norm, dv = line.lu / norm;
  double reach = (cfg.width + cfg.height) / std::max(t.scale, 1e-12);
  std::ostringstream out;
  out << "<line class=\"" << cls << "\" x1=\"" << svg_num(t.x(pu - du * reach)) << "\" y1=\""
      << svg_num(t.y(pv - dv * reach)) << "\" x2=\"" << svg_num(t.x(pu + du * reach))
      << "\" y2=\"" << svg_num(t.y(pv + dv * reach)) << "\" stroke=\"" << color << "\"";
  if (dashed) out << " stroke-dasharray=\"6 4\"";
  out << "/>\n";
  return out.str();
}

}  // namespace

RenderConfig parse_render_config(std::istream& in) {
  RenderConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    std::istringstream val(line.substr(eq + 1));
    if (key == "width")
      val >> cfg.width;
    else if (key == "height")
      val >> cfg.height;
    else if (key == "stroke_width")
      val >> cfg.stroke_width;
    else if (key == "min_radius_px")
      val >> cfg.min_radius_px;
    else if (key == "dot_radius_px")
      val >> cfg.dot_radius_px;
    else if (key == "margin")
      val >> cfg.margin;
    else if (key == "viewport") {
      std::array<double, 4> v{};
      if (val >> v[0] >> v[1] >> v[2] >> v[3]) cfg.viewport = v;
    } else if (!key.empty())
      throw ParseError("unknown config key '" + key + "'");
  }
  if (cfg.width < 1 || cfg.height < 1) throw ParseError("render size must be positive");
  if (cfg.stroke_width <= 0 || cfg.min_radius_px < 0 || cfg.dot_radius_px <= 0)
    throw ParseError("stroke and dot sizes must be positive");
  if (cfg.viewport && ((*cfg.viewport)[0] >= (*cfg.viewport)[1] ||
                       (*cfg.viewport)[2] >= (*cfg.viewport)[3]))
    throw ParseError("viewport must satisfy umin < umax and vmin < vmax");
  return cfg;
}

std::string render_scene_svg(const ChainScene& scene, const RenderConfig& cfg) {
  WorldBox box;
  for (const auto& item : scene.items)
    if (std::holds_alternative<CircleGeometry>(item.geom))
      box.add_circle(std::get<CircleGeometry>(item.geom));
  for (const auto& [u, v] : scene.points) box.add(u, v);

  if (cfg.viewport) {
    box.umin = (*cfg.viewport)[0];
    box.umax = (*cfg.viewport)[1];
    box.vmin = (*cfg.viewport)[2];
    box.vmax = (*cfg.viewport)[3];
    box.empty = false;
  } else if (!box.empty) {
    double mu = (box.umax - box.umin) * cfg.margin;
    double mv = (box.vmax - box.vmin) * cfg.margin;
    if (mu == 0) mu = 1;
    if (mv == 0) mv = 1;
    box.umin -= mu;
    box.umax += mu;
    box.vmin -= mv;
    box.vmax += mv;
  } else {
    box.add(-1, -1);
    box.add(1, 1);
  }
  const Transform t = Transform::fit(box, cfg);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cfg.width << "\" height=\""
      << cfg.height << "\" viewBox=\"0 0 " << cfg.width << " " << cfg.height << "\">\n";
  out << "<g fill=\"none\" stroke-width=\"" << svg_num(cfg.stroke_width) << "\">\n";
  out << line_element(LineGeometry{0, 1, 0}, "axis", kAxis, false, t, cfg);

  std::size_t hue_index = 0;
  for (const auto& item : scene.items) {
    const bool mirror = item.cls == "connecting mirror";
    std::string color;
    if (item.cls == "horocycle" || item.cls == "seed-line")
      color = hue_index++ % 2 ? kHueB : kHueA;
    else
      color = kConnecting;
    if (std::holds_alternative<LineGeometry>(item.geom)) {
      out << line_element(std::get<LineGeometry>(item.geom), item.cls, color, mirror, t, cfg);
      continue;
    }
    const auto& c = std::get<CircleGeometry>(item.geom);
    double rp = c.radius * t.scale;
    if (rp < cfg.min_radius_px) {
      out << "<circle class=\"dot\" cx=\"" << svg_num(t.x(c.cu)) << "\" cy=\""
          << svg_num(t.y(c.cv)) << "\" r=\"" << svg_num(cfg.dot_radius_px) << "\" fill=\""
          << color << "\" stroke=\"none\"/>\n";
      continue;
    }
    out << "<circle class=\"" << item.cls << "\" cx=\"" << svg_num(t.x(c.cu)) << "\" cy=\""
        << svg_num(t.y(c.cv)) << "\" r=\"" << svg_num(rp) << "\" stroke=\"" << color << "\"";
    if (mirror) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

namespace {

template <class S>
PreparedChain prepare(const ContinuedFraction& cf, Arrangement arr, std::size_t count,
                      double tol) {
  Chain<S> chain = build_chain<S>(cf, arr, count);
  return {to_double_chain(chain), verify_chain(chain, tol), chain_cycles_text(chain),
          chain_scene(chain)};
}

}  // namespace

PreparedChain prepare_chain(const ContinuedFraction& cf, Arrangement arr, std::size_t count,
                            double tol) {
  if (cf.is_unimodular()) {
    if (arr == Arrangement::Tangent) return prepare<Rational>(cf, arr, count, tol);
    return prepare<QSqrt2>(cf, arr, count, tol);
  }
  return prepare<double>(cf, arr, count, tol);
}

}  // namespace cfcycles
