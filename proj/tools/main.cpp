#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfcycles/chain.hpp"
#include "cfcycles/clifford.hpp"
#include "cfcycles/continued_fraction.hpp"
#include "cfcycles/svg.hpp"

namespace {

using namespace cfcycles;

struct CommonOptions {
  std::vector<std::string> source;  // e | pi | file PATH | real p/q
  std::size_t terms = 0;            // 0 = all available
  std::string arrangement = "tangent";
  std::string out;
  std::string config;
  double tol = 1e-12;
  unsigned dim = 1;
  std::size_t window = 0;
  bool print_cycles = false;
};

Arrangement parse_arrangement(const std::string& name) {
  if (name == "tangent") return Arrangement::Tangent;
  if (name == "orthogonal") return Arrangement::Orthogonal;
  if (name == "mixed") return Arrangement::Mixed;
  throw ParseError("unknown arrangement '" + name + "'");
}

ContinuedFraction load_cf(const CommonOptions& opt) {
  if (opt.source.empty()) throw ParseError("--source is required");
  const std::string& kind = opt.source[0];
  if (kind == "e") {
    if (opt.terms == 0) throw ParseError("--terms is required for the e source");
    return coefficient_source(NamedSource::E, opt.terms);
  }
  if (kind == "pi") {
    return coefficient_source(NamedSource::Pi, opt.terms == 0 ? pi_table_size() : opt.terms);
  }
  if (kind == "file") {
    if (opt.source.size() != 2) throw ParseError("--source file needs a path");
    std::ifstream in(opt.source[1]);
    if (!in) throw ParseError("cannot open '" + opt.source[1] + "'");
    return parse_cf_text(in);
  }
  if (kind == "real") {
    if (opt.source.size() != 2) throw ParseError("--source real needs a rational value");
    return expand_real(parse_rational(opt.source[1]));
  }
  throw ParseError("unknown source '" + kind + "'");
}

std::size_t resolve_terms(const CommonOptions& opt, const ContinuedFraction& cf) {
  std::size_t n = opt.terms == 0 ? cf.size() : opt.terms;
  if (n == 0 || n > cf.size())
    throw ParseError("term count " + std::to_string(n) + " out of range (have " +
                     std::to_string(cf.size()) + ")");
  return n;
}

RenderConfig load_render_config(const CommonOptions& opt) {
  if (opt.config.empty()) return RenderConfig{};
  std::ifstream in(opt.config);
  if (!in) throw ParseError("cannot open config '" + opt.config + "'");
  return parse_render_config(in);
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << payload;
}

int run_convergents(const CommonOptions& opt) {
  ContinuedFraction cf = load_cf(opt);
  std::size_t n = resolve_terms(opt, cf);
  const Rational b0 = cf.integer_part().value_or(Rational(0));
  ConvergentState state;
  for (std::size_t j = 0; j < n; ++j) {
    state = convergent_step(state, cf.terms()[j]);
    if (state.q_curr == 0)
      std::cout << "inf\n";
    else
      std::cout << rational_str(b0 + state.p_curr / state.q_curr) << "\n";
  }
  return 0;
}

int run_chain(const CommonOptions& opt) {
  ContinuedFraction cf = load_cf(opt);
  std::size_t n = resolve_terms(opt, cf);
  Arrangement arr = parse_arrangement(opt.arrangement);
  PreparedChain built = prepare_chain(cf, arr, n, opt.tol);
  if (opt.print_cycles) std::cout << built.cycles_text;
  write_output(opt.out, render_scene_svg(built.scene, load_render_config(opt)));
  return 0;
}

int run_verify(const CommonOptions& opt) {
  ContinuedFraction cf = load_cf(opt);
  std::size_t n = resolve_terms(opt, cf);
  Arrangement arr = parse_arrangement(opt.arrangement);
  PreparedChain built = prepare_chain(cf, arr, n, opt.tol);
  std::cout << built.report.to_text();
  return built.report.all_pass() ? 0 : 1;
}

std::vector<Multivector<double>> load_vectors(const CommonOptions& opt, unsigned& dim) {
  if (opt.source.empty()) throw ParseError("--source is required");
  const std::string& kind = opt.source[0];
  if (kind == "file") {
    if (opt.source.size() != 2) throw ParseError("--source file needs a path");
    std::ifstream in(opt.source[1]);
    if (!in) throw ParseError("cannot open '" + opt.source[1] + "'");
    std::vector<Multivector<double>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::vector<double> comps;
      std::string tok;
      while (ls >> tok) comps.push_back(to_double(parse_rational(tok)));
      if (comps.empty()) continue;
      if (out.empty()) {
        if (opt.dim > 1 && comps.size() != opt.dim)
          throw ParseError("line " + std::to_string(lineno) + ": expected " +
                           std::to_string(opt.dim) + " components");
        dim = static_cast<unsigned>(comps.size());
      } else if (comps.size() != dim) {
        throw ParseError("line " + std::to_string(lineno) + ": inconsistent dimension");
      }
      out.push_back(Multivector<double>::vector(dim, comps));
    }
    if (out.empty()) throw ParseError("no coefficient vectors in '" + opt.source[1] + "'");
    return out;
  }
  // Scalar sources embed along e1 in the requested dimension.
  ContinuedFraction cf = load_cf(opt);
  dim = std::max(1u, opt.dim);
  std::vector<Multivector<double>> out;
  for (const auto& t : cf.terms()) {
    std::vector<double> comps(dim, 0.0);
    comps[0] = to_double(t.b);
    out.push_back(Multivector<double>::vector(dim, comps));
  }
  return out;
}

int run_clifford(const CommonOptions& opt) {
  unsigned dim = opt.dim;
  auto bs = load_vectors(opt, dim);
  std::size_t n = opt.terms == 0 ? bs.size() : opt.terms;
  if (n == 0 || n > bs.size())
    throw ParseError("term count " + std::to_string(n) + " out of range (have " +
                     std::to_string(bs.size()) + ")");
  bs.resize(n);
  Arrangement arr = parse_arrangement(opt.arrangement);

  auto chain = build_chain_nd(bs, arr, n);
  for (const auto& link : chain.links) {
    std::vector<double> comps = link.touch_curr;
    Multivector<double> pq = Multivector<double>::vector(dim, comps);
    std::cout << "pq " << link.index << " " << mv_str(pq) << "\n";
  }
  auto validation = ahlfors_validate(chain.matrix, opt.tol);
  std::cout << "matrix a=" << mv_str(chain.matrix.a) << " b=" << mv_str(chain.matrix.b)
            << " c=" << mv_str(chain.matrix.c) << " d=" << mv_str(chain.matrix.d) << "\n";
  std::cout << validation.to_text();

  std::vector<CycleND<double>> connecting;
  for (const auto& link : chain.links) connecting.push_back(link.connecting);
  auto radius_rep = convergence_check(connecting, ConvergenceMode::RadiusToZero, opt.window);
  std::cout << "mode radius\n" << radius_rep.to_text();
  auto height_rep = convergence_check(connecting, ConvergenceMode::HeightToZero, opt.window);
  std::cout << "mode height\n" << height_rep.to_text();

  if (!opt.out.empty())
    write_output(opt.out, render_section_plane(chain, load_render_config(opt)));
  return validation.valid() ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_render) {
  cmd->add_option("--source", opt.source,
                  "coefficient source: e | pi | file PATH | real p/q")
      ->expected(1, 2)
      ->required();
  cmd->add_option("--terms", opt.terms, "number of terms (default: all available)");
  cmd->add_option("--arrangement", opt.arrangement, "tangent | orthogonal | mixed");
  cmd->add_option("--tol", opt.tol, "verification tolerance");
  if (with_render) {
    cmd->add_option("--out", opt.out, "output SVG path (default: stdout)");
    cmd->add_option("--config", opt.config, "render config file (key = value lines)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continued fractions as Moebius products with horocycle-chain rendering"};
  app.require_subcommand(1);

  CommonOptions conv_opt, chain_opt, verify_opt, cliff_opt;
  CLI::App* conv = app.add_subcommand("convergents", "print the convergent table");
  add_common(conv, conv_opt, false);

  CLI::App* chain = app.add_subcommand("chain", "build a horocycle chain and render SVG");
  add_common(chain, chain_opt, true);
  chain->add_flag("--print-cycles", chain_opt.print_cycles,
                  "also print the cycle quadruples as text");

  CLI::App* verify = app.add_subcommand("verify", "verify every chain property");
  add_common(verify, verify_opt, false);

  CLI::App* cliff = app.add_subcommand("clifford", "multidimensional pipeline");
  add_common(cliff, cliff_opt, true);
  cliff->add_option("--dim", cliff_opt.dim, "ambient dimension n for e1-embedded sources");
  cliff->add_option("--window", cliff_opt.window, "trailing window for monotonicity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (conv->parsed()) return run_convergents(conv_opt);
    if (chain->parsed()) return run_chain(chain_opt);
    if (verify->parsed()) return run_verify(verify_opt);
    if (cliff->parsed()) return run_clifford(cliff_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
