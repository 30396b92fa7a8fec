#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "cfcycles/chain.hpp"
#include "cfcycles/clifford.hpp"
#include "cfcycles/continued_fraction.hpp"
#include "cfcycles/svg.hpp"

namespace py = pybind11;
using namespace cfcycles;

namespace {

Arrangement parse_arrangement(const std::string& name) {
  if (name == "tangent") return Arrangement::Tangent;
  if (name == "orthogonal") return Arrangement::Orthogonal;
  if (name == "mixed") return Arrangement::Mixed;
  throw py::value_error("unknown arrangement '" + name + "'");
}

ConvergenceMode parse_mode(const std::string& name) {
  if (name == "radius") return ConvergenceMode::RadiusToZero;
  if (name == "height") return ConvergenceMode::HeightToZero;
  throw py::value_error("unknown convergence mode '" + name + "'");
}

ContinuedFraction cf_from_source(const std::string& name, std::size_t terms) {
  if (name == "e") return coefficient_source(NamedSource::E, terms);
  if (name == "pi")
    return coefficient_source(NamedSource::Pi, terms == 0 ? pi_table_size() : terms);
  throw py::value_error("unknown source '" + name + "'");
}

ContinuedFraction cf_from_terms(const std::optional<std::string>& integer_part,
                                const std::vector<std::pair<std::string, std::string>>& terms) {
  std::optional<Rational> b0;
  if (integer_part) b0 = parse_rational(*integer_part);
  std::vector<CfTerm> ts;
  for (const auto& [a, b] : terms) ts.emplace_back(parse_rational(a), parse_rational(b));
  return ContinuedFraction(std::move(b0), std::move(ts));
}

RenderConfig config_from_kwargs(int width, int height,
                                std::optional<std::array<double, 4>> viewport,
                                double stroke_width, double min_radius_px) {
  RenderConfig cfg;
  cfg.width = width;
  cfg.height = height;
  cfg.viewport = viewport;
  cfg.stroke_width = stroke_width;
  cfg.min_radius_px = min_radius_px;
  return cfg;
}

py::dict report_to_dict(const VerificationReport& report) {
  py::list checks;
  for (const auto& c : report.checks) {
    py::dict d;
    d["link"] = c.link;
    d["name"] = c.name;
    d["residual"] = c.residual;
    d["pass"] = c.pass;
    checks.append(d);
  }
  py::dict out;
  out["all_pass"] = report.all_pass();
  out["checks"] = checks;
  return out;
}

py::dict cycle_to_dict(const Cycle2<double>& c) {
  py::dict d;
  d["k"] = c.k;
  d["l"] = c.l;
  d["n"] = c.n;
  d["m"] = c.m;
  return d;
}

std::vector<Multivector<double>> vectors_from_lists(const std::vector<std::vector<double>>& bs) {
  if (bs.empty()) throw py::value_error("need at least one coefficient vector");
  unsigned dim = static_cast<unsigned>(bs.front().size());
  std::vector<Multivector<double>> out;
  for (const auto& comps : bs) {
    if (comps.size() != dim) throw py::value_error("inconsistent vector dimensions");
    out.push_back(Multivector<double>::vector(dim, comps));
  }
  return out;
}

std::vector<Multivector<Rational>> vectors_from_strs(
    const std::vector<std::vector<std::string>>& bs) {
  if (bs.empty()) throw py::value_error("need at least one coefficient vector");
  unsigned dim = static_cast<unsigned>(bs.front().size());
  std::vector<Multivector<Rational>> out;
  for (const auto& comps : bs) {
    if (comps.size() != dim) throw py::value_error("inconsistent vector dimensions");
    std::vector<Rational> rc;
    for (const auto& c : comps) rc.push_back(parse_rational(c));
    out.push_back(Multivector<Rational>::vector(dim, rc));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Continued fractions as Moebius products, cycle geometry and horocycle chains";

  py::register_exception<Error>(m, "CfcyclesError");

  py::class_<ContinuedFraction>(m, "ContinuedFraction")
      .def_static("from_source", &cf_from_source, py::arg("name"), py::arg("terms") = 0,
                  "classical sources 'e' and 'pi'")
      .def_static("from_terms", &cf_from_terms, py::arg("integer_part"), py::arg("terms"),
                  "terms are (a, b) pairs of rational strings")
      .def_static("from_real",
                  [](const std::string& x) { return expand_real(parse_rational(x)); })
      .def_static("parse", [](const std::string& text) { return parse_cf_text(text); })
      .def_property_readonly("num_terms", &ContinuedFraction::size)
      .def_property_readonly("integer_part",
                             [](const ContinuedFraction& cf) -> std::optional<std::string> {
                               if (!cf.integer_part()) return std::nullopt;
                               return rational_str(*cf.integer_part());
                             })
      .def_property_readonly("terms",
                             [](const ContinuedFraction& cf) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& t : cf.terms())
                                 out.emplace_back(rational_str(t.a), rational_str(t.b));
                               return out;
                             })
      .def_property_readonly("is_unimodular", &ContinuedFraction::is_unimodular)
      .def("to_text", &cf_to_text)
      .def("__len__", &ContinuedFraction::size)
      .def("__repr__", [](const ContinuedFraction& cf) {
        std::ostringstream out;
        out << "ContinuedFraction(terms=" << cf.size() << ")";
        return out.str();
      });

  m.def(
      "convergents",
      [](const ContinuedFraction& cf, std::size_t count) {
        std::vector<std::string> out;
        for (const auto& c : convergents(cf, count)) out.push_back(rational_str(c));
        return out;
      },
      py::arg("cf"), py::arg("count"), "convergents b0 + P_n/Q_n as rational strings");
  m.def(
      "convergent_floats",
      [](const ContinuedFraction& cf, std::size_t count) {
        std::vector<double> out;
        for (const auto& c : convergents(cf, count)) out.push_back(to_double(c));
        return out;
      },
      py::arg("cf"), py::arg("count"));
  m.def(
      "evaluate_oracle",
      [](const ContinuedFraction& cf, std::size_t n) {
        return rational_str(evaluate_oracle(cf, n));
      },
      py::arg("cf"), py::arg("n"), "independent bottom-up evaluation");
  m.def(
      "cf_matrix",
      [](const ContinuedFraction& cf, std::size_t n, bool include_integer_part) {
        Mat2Q mat = cf_matrix(cf, n, include_integer_part);
        return std::vector<std::vector<std::string>>{
            {rational_str(mat.a), rational_str(mat.b)},
            {rational_str(mat.c), rational_str(mat.d)}};
      },
      py::arg("cf"), py::arg("n"), py::arg("include_integer_part") = false);
  m.def("expand_real",
        [](const std::string& x) { return expand_real(parse_rational(x)); });

  py::class_<ChainLink<double>>(m, "ChainLink")
      .def_readonly("index", &ChainLink<double>::index)
      .def_property_readonly("horo_prev",
                             [](const ChainLink<double>& l) { return cycle_to_dict(l.horo_prev); })
      .def_property_readonly("horo_curr",
                             [](const ChainLink<double>& l) { return cycle_to_dict(l.horo_curr); })
      .def_property_readonly(
          "connecting", [](const ChainLink<double>& l) { return cycle_to_dict(l.connecting); })
      .def_property_readonly("mirror_connecting",
                             [](const ChainLink<double>& l) -> std::optional<py::dict> {
                               if (!l.mirror_connecting) return std::nullopt;
                               return cycle_to_dict(*l.mirror_connecting);
                             })
      .def_property_readonly("touch_prev",
                             [](const ChainLink<double>& l) { return rational_str(l.touch_prev); })
      .def_property_readonly("touch_curr",
                             [](const ChainLink<double>& l) { return rational_str(l.touch_curr); })
      .def_property_readonly("touch_prev_float",
                             [](const ChainLink<double>& l) { return to_double(l.touch_prev); })
      .def_property_readonly("touch_curr_float",
                             [](const ChainLink<double>& l) { return to_double(l.touch_curr); });

  py::class_<Chain<double>>(m, "Chain")
      .def_property_readonly("arrangement",
                             [](const Chain<double>& c) {
                               return std::string(arrangement_name(c.arrangement));
                             })
      .def_property_readonly("seed_line",
                             [](const Chain<double>& c) { return cycle_to_dict(c.seed_line); })
      .def_readonly("links", &Chain<double>::links)
      .def("__len__", [](const Chain<double>& c) { return c.links.size(); });

  m.def(
      "build_chain",
      [](const ContinuedFraction& cf, const std::string& arrangement, std::size_t count) {
        return prepare_chain(cf, parse_arrangement(arrangement), count).chain;
      },
      py::arg("cf"), py::arg("arrangement"), py::arg("count"),
      "chain computed exactly when the fraction allows it, lowered to floats");
  m.def(
      "verify_chain",
      [](const ContinuedFraction& cf, const std::string& arrangement, std::size_t count,
         double tol) {
        return report_to_dict(prepare_chain(cf, parse_arrangement(arrangement), count, tol).report);
      },
      py::arg("cf"), py::arg("arrangement"), py::arg("count"), py::arg("tol") = 1e-12);
  m.def(
      "chain_cycles_text",
      [](const ContinuedFraction& cf, const std::string& arrangement, std::size_t count) {
        return prepare_chain(cf, parse_arrangement(arrangement), count).cycles_text;
      },
      py::arg("cf"), py::arg("arrangement"), py::arg("count"));
  m.def(
      "render_chain_svg",
      [](const ContinuedFraction& cf, const std::string& arrangement, std::size_t count,
         int width, int height, std::optional<std::array<double, 4>> viewport,
         double stroke_width, double min_radius_px) {
        auto prepared = prepare_chain(cf, parse_arrangement(arrangement), count);
        return render_scene_svg(
            prepared.scene,
            config_from_kwargs(width, height, viewport, stroke_width, min_radius_px));
      },
      py::arg("cf"), py::arg("arrangement"), py::arg("count"), py::arg("width") = 800,
      py::arg("height") = 500, py::arg("viewport") = std::nullopt,
      py::arg("stroke_width") = 1.5, py::arg("min_radius_px") = 0.5);

  py::class_<Multivector<double>>(m, "Multivector")
      .def(py::init<unsigned>(), py::arg("dim"))
      .def_static("scalar", &Multivector<double>::scalar)
      .def_static("basis", &Multivector<double>::basis_vector, py::arg("dim"), py::arg("i"))
      .def_static(
          "vector",
          [](unsigned dim, const std::vector<double>& comps) {
            return Multivector<double>::vector(dim, comps);
          },
          py::arg("dim"), py::arg("components"))
      .def_property_readonly("dim", &Multivector<double>::dim)
      .def("coeff", &Multivector<double>::coeff)
      .def("scalar_part", &Multivector<double>::scalar_part)
      .def("vector_components", &Multivector<double>::vector_components)
      .def("reverse", &Multivector<double>::reversed)
      .def("conjugate", &Multivector<double>::conjugated)
      .def("grade", &Multivector<double>::grade)
      .def("__add__", [](const Multivector<double>& x,
                         const Multivector<double>& y) { return x + y; })
      .def("__sub__", [](const Multivector<double>& x,
                         const Multivector<double>& y) { return x - y; })
      .def("__mul__", [](const Multivector<double>& x,
                         const Multivector<double>& y) { return x * y; })
      .def("__rmul__", [](const Multivector<double>& x, double s) { return s * x; })
      .def("__neg__", [](const Multivector<double>& x) { return -x; })
      .def("__repr__", [](const Multivector<double>& x) { return mv_str(x); });

  m.def("vector_inverse", &vector_inverse<double>);

  m.def(
      "md_partial_quotients",
      [](const std::vector<std::vector<double>>& bs) {
        auto vecs = vectors_from_lists(bs);
        unsigned dim = vecs.front().dim();
        std::vector<std::vector<double>> out;
        for (std::size_t n = 1; n <= vecs.size(); ++n) {
          auto mat = md_cf_matrix(std::vector<Multivector<double>>(vecs.begin(), vecs.begin() + n), dim);
          out.push_back(partial_quotient_nd(mat).vector_components());
        }
        return out;
      },
      py::arg("bs"), "partial quotient vectors after 1..len(bs) factors");
  m.def(
      "md_partial_quotients_exact",
      [](const std::vector<std::vector<std::string>>& bs) {
        auto vecs = vectors_from_strs(bs);
        unsigned dim = vecs.front().dim();
        std::vector<std::vector<std::string>> out;
        for (std::size_t n = 1; n <= vecs.size(); ++n) {
          auto mat = md_cf_matrix(
              std::vector<Multivector<Rational>>(vecs.begin(), vecs.begin() + n), dim);
          std::vector<std::string> row;
          for (const auto& c : partial_quotient_nd(mat).vector_components())
            row.push_back(rational_str(c));
          out.push_back(row);
        }
        return out;
      },
      py::arg("bs"), "exact rational partial quotients");
  m.def(
      "convergence_report",
      [](const std::vector<std::vector<double>>& bs, const std::string& arrangement,
         const std::string& mode, std::size_t window) {
        auto vecs = vectors_from_lists(bs);
        auto chain = build_chain_nd(vecs, parse_arrangement(arrangement), vecs.size());
        std::vector<CycleND<double>> connecting;
        for (const auto& link : chain.links) connecting.push_back(link.connecting);
        auto rep = convergence_check(connecting, parse_mode(mode), window);
        py::dict out;
        out["enclosed"] = rep.enclosed;
        out["decreasing"] = rep.decreasing;
        out["radii"] = rep.radii;
        out["heights"] = rep.heights;
        out["enclosure_pairs"] = rep.enclosure_pairs;
        return out;
      },
      py::arg("bs"), py::arg("arrangement"), py::arg("mode") = "radius",
      py::arg("window") = 0);
  m.def(
      "render_section_svg",
      [](const std::vector<std::vector<double>>& bs, const std::string& arrangement,
         int width, int height, std::optional<std::array<double, 4>> viewport,
         double stroke_width, double min_radius_px) {
        auto vecs = vectors_from_lists(bs);
        auto chain = build_chain_nd(vecs, parse_arrangement(arrangement), vecs.size());
        return render_section_plane(
            chain, config_from_kwargs(width, height, viewport, stroke_width, min_radius_px));
      },
      py::arg("bs"), py::arg("arrangement"), py::arg("width") = 800, py::arg("height") = 500,
      py::arg("viewport") = std::nullopt, py::arg("stroke_width") = 1.5,
      py::arg("min_radius_px") = 0.5);

  m.attr("__version__") = "0.1.0";
}
