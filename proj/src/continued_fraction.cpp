#include "cfcycles/continued_fraction.hpp"

#include <sstream>

namespace cfcycles {

ContinuedFraction ContinuedFraction::simple(std::optional<Rational> b0,
                                            const std::vector<Rational>& bs) {
  std::vector<CfTerm> terms;
  terms.reserve(bs.size());
  for (const auto& b : bs) terms.emplace_back(Rational(1), b);
  return ContinuedFraction(std::move(b0), std::move(terms));
}

bool ContinuedFraction::is_unimodular() const {
  for (const auto& t : terms_)
    if (t.a != 1 && t.a != -1) return false;
  return true;
}

ConvergentState convergent_step(const ConvergentState& state, const CfTerm& term) {
  ConvergentState next;
  next.p_prev = state.p_curr;
  next.q_prev = state.q_curr;
  next.p_curr = term.b * state.p_curr + term.a * state.p_prev;
  next.q_curr = term.b * state.q_curr + term.a * state.q_prev;
  next.index = state.index + 1;
  return next;
}

std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t count) {
  if (count > cf.size()) throw std::invalid_argument("more convergents requested than terms");
  const Rational b0 = cf.integer_part().value_or(Rational(0));
  std::vector<Rational> out;
  out.reserve(count);
  ConvergentState state;
  for (std::size_t j = 0; j < count; ++j) {
    state = convergent_step(state, cf.terms()[j]);
    if (state.q_curr == 0) throw DivergentConvergent(state.index);
    out.push_back(b0 + state.p_curr / state.q_curr);
  }
  return out;
}

Mat2Q cf_matrix(const ContinuedFraction& cf, std::size_t n, bool include_integer_part) {
  if (n > cf.size()) throw std::invalid_argument("matrix order exceeds term count");
  Mat2Q m = Mat2Q::identity();
  if (include_integer_part && cf.integer_part())
    m = m * Mat2Q{1, *cf.integer_part(), 0, 1};
  for (std::size_t j = 0; j < n; ++j)
    m = m * Mat2Q{0, cf.terms()[j].a, 1, cf.terms()[j].b};
  return m;
}

Rational evaluate_oracle(const ContinuedFraction& cf, std::size_t n) {
  if (n < 1 || n > cf.size()) throw std::invalid_argument("oracle depth out of range");
  // Innermost level first: value = a_n / b_n, then a_j / (b_j + value).
  Rational value = 0;
  for (std::size_t j = n; j >= 1; --j) {
    const CfTerm& t = cf.terms()[j - 1];
    Rational den = t.b + value;
    if (den == 0) throw DivisionByZero("zero denominator at level " + std::to_string(j));
    value = t.a / den;
  }
  return cf.integer_part().value_or(Rational(0)) + value;
}

ContinuedFraction expand_real(const Rational& x) {
  Rational b0(rational_floor(x));
  Rational frac = x - b0;
  std::vector<Rational> bs;
  // Standard Euclidean expansion of the fractional part; terminates since x
  // is rational.
  while (frac != 0) {
    Rational inv = 1 / frac;
    Rational b(rational_floor(inv));
    bs.push_back(b);
    frac = inv - b;
  }
  return ContinuedFraction::simple(b0, bs);
}

namespace {

// 3, 7, 15, 1, 292, ... -- no closed form exists, so the table is fixed and
// requests past its end fail loudly.
const std::vector<int>& pi_terms() {
  static const std::vector<int> terms = {7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14};
  return terms;
}

}  // namespace

std::size_t pi_table_size() { return pi_terms().size(); }

ContinuedFraction coefficient_source(NamedSource source, std::size_t count) {
  std::vector<Rational> bs;
  bs.reserve(count);
  if (source == NamedSource::E) {
    // 1, 2, 1, 1, 4, 1, 1, 6, ... : b_j = 2(j+1)/3 when j = 2 (mod 3), else 1.
    for (std::size_t j = 1; j <= count; ++j)
      bs.emplace_back(j % 3 == 2 ? Rational(2 * ((j + 1) / 3)) : Rational(1));
    return ContinuedFraction::simple(Rational(2), bs);
  }
  if (count > pi_terms().size())
    throw TableExhausted("pi table holds " + std::to_string(pi_terms().size()) + " terms, " +
                         std::to_string(count) + " requested");
  for (std::size_t j = 0; j < count; ++j) bs.emplace_back(pi_terms()[j]);
  return ContinuedFraction::simple(Rational(3), bs);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

}  // namespace

ContinuedFraction parse_cf_text(std::istream& in) {
  std::optional<Rational> b0;
  std::vector<CfTerm> terms;
  std::string line;
  bool first_content = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (first_content && tokens.size() == 2 && tokens[0] == "b0") {
      b0 = parse_rational(tokens[1]);
      first_content = false;
      continue;
    }
    first_content = false;
    if (tokens.size() != 2)
      throw ParseError("line " + std::to_string(lineno) + ": expected '<a> <b>'");
    Rational a = parse_rational(tokens[0]);
    Rational b = parse_rational(tokens[1]);
    if (a == 0) throw ParseError("line " + std::to_string(lineno) + ": term with a = 0");
    terms.emplace_back(std::move(a), std::move(b));
  }
  return ContinuedFraction(std::move(b0), std::move(terms));
}

ContinuedFraction parse_cf_text(const std::string& text) {
  std::istringstream in(text);
  return parse_cf_text(in);
}

std::string cf_to_text(const ContinuedFraction& cf) {
  std::ostringstream out;
  if (cf.integer_part()) out << "b0 " << rational_str(*cf.integer_part()) << "\n";
  for (const auto& t : cf.terms())
    out << rational_str(t.a) << " " << rational_str(t.b) << "\n";
  return out.str();
}

}  // namespace cfcycles
