#include "cfcycles/clifford.hpp"

#include <sstream>

namespace cfcycles {

std::optional<Rational> rational_exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  if (x == 0) return Rational(0);
  Integer num = numerator(x), den = denominator(x);
  Integer rn = boost::multiprecision::sqrt(num);
  Integer rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks)
    out << c.name << " " << c.residual << " " << (c.pass ? "pass" : "fail") << "\n";
  if (kappa) out << "kappa " << *kappa << "\n";
  return out.str();
}

std::string ConvergenceReport::to_text() const {
  std::ostringstream out;
  out << "enclosed " << (enclosed ? "true" : "false") << "\n";
  out << "decreasing " << (decreasing ? "true" : "false") << "\n";
  out << "radii";
  for (double r : radii) out << " " << r;
  out << "\nheights";
  for (double h : heights) out << " " << h;
  out << "\n";
  return out.str();
}

}  // namespace cfcycles
