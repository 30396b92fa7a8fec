#include "cfcycles/rational.hpp"

#include <cctype>
#include <charconv>

#include "cfcycles/errors.hpp"

namespace cfcycles {

Integer rational_floor(const Rational& x) {
  Integer num = numerator(x);
  Integer den = denominator(x);
  Integer q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

namespace {

bool valid_integer_token(std::string_view t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

// cpp_int's string constructor takes '-' but not '+'.
Integer parse_integer_token(std::string_view t) {
  if (t[0] == '+') t.remove_prefix(1);
  return Integer(std::string(t));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer_token(text)) throw ParseError("bad rational: '" + std::string(text) + "'");
    return Rational(parse_integer_token(text));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!valid_integer_token(num) || !valid_integer_token(den))
    throw ParseError("bad rational: '" + std::string(text) + "'");
  Integer n = parse_integer_token(num);
  Integer d = parse_integer_token(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rational(n, d);
}

std::string rational_str(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string scalar_str(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace cfcycles
