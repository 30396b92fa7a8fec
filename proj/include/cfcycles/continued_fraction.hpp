#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cfcycles/errors.hpp"
#include "cfcycles/rational.hpp"

namespace cfcycles {

/// One term a/(b + ...) of a continued fraction. The partial numerator must
/// not vanish, otherwise the tail of the fraction is dead weight.
struct CfTerm {
  Rational a;
  Rational b;

  CfTerm(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a == 0) throw std::invalid_argument("continued fraction term with a = 0");
  }
};

/// A finite continued fraction b0 + a1/(b1 + a2/(b2 + ...)). The integer part
/// b0 is kept apart from the terms so the term recurrences stay untouched.
class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  ContinuedFraction(std::optional<Rational> integer_part, std::vector<CfTerm> terms)
      : integer_part_(std::move(integer_part)), terms_(std::move(terms)) {}

  /// Simple continued fraction: every partial numerator is 1.
  static ContinuedFraction simple(std::optional<Rational> b0, const std::vector<Rational>& bs);

  const std::optional<Rational>& integer_part() const { return integer_part_; }
  const std::vector<CfTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// True when every |a_j| = 1, so all term matrices have determinant +-1.
  bool is_unimodular() const;

 private:
  std::optional<Rational> integer_part_;
  std::vector<CfTerm> terms_;
};

/// Numerators and denominators of two consecutive convergents,
/// P_{n-1}, P_n, Q_{n-1}, Q_n, with P_{-1} = 1, P_0 = 0, Q_{-1} = 0, Q_0 = 1.
struct ConvergentState {
  Rational p_prev{1};
  Rational p_curr{0};
  Rational q_prev{0};
  Rational q_curr{1};
  std::size_t index{0};

  /// P_{n-1} Q_n - P_n Q_{n-1}, which equals the product of (-a_j), j <= n.
  Rational determinant() const { return p_prev * q_curr - p_curr * q_prev; }
};

/// One step of the convergent recurrence
/// P_n = b_n P_{n-1} + a_n P_{n-2}, Q_n = b_n Q_{n-1} + a_n Q_{n-2}.
ConvergentState convergent_step(const ConvergentState& state, const CfTerm& term);

/// 2x2 matrix over the rationals, row-major (a b; c d).
struct Mat2Q {
  Rational a, b, c, d;

  static Mat2Q identity() { return {1, 0, 0, 1}; }
  Rational det() const { return a * d - b * c; }
  friend Mat2Q operator*(const Mat2Q& x, const Mat2Q& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2Q& x, const Mat2Q& y) = default;
};

/// First `count` values b0 + P_n/Q_n, n = 1..count, in lowest terms.
/// Throws DivergentConvergent when some Q_n = 0.
std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t count);

/// Product of the term matrices (0 a_j; 1 b_j), j = 1..n. Columns are
/// (P_{n-1}, Q_{n-1}) and (P_n, Q_n). With `include_integer_part` the prefix
/// (1 b0; 0 1) is multiplied in front.
Mat2Q cf_matrix(const ContinuedFraction& cf, std::size_t n, bool include_integer_part = false);

/// Independent bottom-up evaluation of the first n terms (plus integer part).
/// Used as the test oracle for the recurrence-based path. Throws
/// DivisionByZero when an intermediate denominator vanishes.
Rational evaluate_oracle(const ContinuedFraction& cf, std::size_t n);

/// Simple continued fraction of a rational number via the Euclidean
/// algorithm; all a_j = 1, b_j positive integers for j >= 1, and the last
/// b_j > 1 unless the expansion has a single term.
ContinuedFraction expand_real(const Rational& x);

enum class NamedSource { E, Pi };

/// Coefficients of the classical simple expansions. E is generated from the
/// (1, 2k, 1) pattern for any count; Pi is a fixed embedded table and throws
/// TableExhausted beyond it.
ContinuedFraction coefficient_source(NamedSource source, std::size_t count);

/// Number of terms the embedded Pi table holds.
std::size_t pi_table_size();

/// Text format: optional first line "b0 <rational>", then one term per line
/// "<a> <b>"; '#' starts a comment.
ContinuedFraction parse_cf_text(std::istream& in);
ContinuedFraction parse_cf_text(const std::string& text);
std::string cf_to_text(const ContinuedFraction& cf);

}  // namespace cfcycles
