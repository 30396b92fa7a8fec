#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfcycles/cycle.hpp"
#include "cfcycles/errors.hpp"
#include "cfcycles/qsqrt2.hpp"
#include "cfcycles/rational.hpp"

namespace cfcycles {

/// Sign from reordering the product of two basis blades (bitmasks) into
/// canonical ascending order. Metric-independent.
int blade_reorder_sign(std::uint32_t a, std::uint32_t b);

/// "e1e3" from the bitmask with bits 0 and 2 set; "1" for the scalar blade.
std::string blade_name(std::uint32_t mask);

inline unsigned blade_grade(std::uint32_t mask) { return std::popcount(mask); }

/// Dense element of the Clifford algebra with generators e_1..e_dim obeying
/// e_i e_j + e_j e_i = -2 delta_ij. Coefficients are indexed by basis-blade
/// bitmasks (bit i-1 set = generator e_i present), which is the canonical
/// lexicographic blade order.
template <class S>
class Multivector {
 public:
  static constexpr unsigned kMaxDim = 8;

  Multivector() : Multivector(0u) {}
  explicit Multivector(unsigned dim) : dim_(dim), coeffs_(std::size_t{1} << dim) {
    if (dim > kMaxDim) throw std::invalid_argument("multivector dimension capped at 8");
  }

  static Multivector scalar(unsigned dim, S value) {
    Multivector x(dim);
    x.coeffs_[0] = std::move(value);
    return x;
  }

  /// Generator e_i, 1-based.
  static Multivector basis_vector(unsigned dim, unsigned i) {
    if (i < 1 || i > dim) throw std::invalid_argument("generator index out of range");
    Multivector x(dim);
    x.coeffs_[std::size_t{1} << (i - 1)] = S(1);
    return x;
  }

  /// Grade-1 element with the given components.
  static Multivector vector(unsigned dim, std::span<const S> components) {
    if (components.size() > dim) throw std::invalid_argument("too many vector components");
    Multivector x(dim);
    for (std::size_t i = 0; i < components.size(); ++i)
      x.coeffs_[std::size_t{1} << i] = components[i];
    return x;
  }

  unsigned dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }
  const S& coeff(std::uint32_t mask) const { return coeffs_[mask]; }
  void set_coeff(std::uint32_t mask, S value) { coeffs_[mask] = std::move(value); }

  /// Same element viewed in a larger algebra (blade masks are unchanged).
  Multivector lifted(unsigned dim) const {
    if (dim < dim_) throw std::invalid_argument("cannot lift to a smaller algebra");
    Multivector x(dim);
    for (std::size_t m = 0; m < coeffs_.size(); ++m) x.coeffs_[m] = coeffs_[m];
    return x;
  }

  friend Multivector operator+(const Multivector& x, const Multivector& y) {
    x.check_dim(y);
    Multivector out(x.dim_);
    for (std::size_t m = 0; m < out.coeffs_.size(); ++m)
      out.coeffs_[m] = x.coeffs_[m] + y.coeffs_[m];
    return out;
  }
  friend Multivector operator-(const Multivector& x, const Multivector& y) {
    x.check_dim(y);
    Multivector out(x.dim_);
    for (std::size_t m = 0; m < out.coeffs_.size(); ++m)
      out.coeffs_[m] = x.coeffs_[m] - y.coeffs_[m];
    return out;
  }
  friend Multivector operator-(const Multivector& x) {
    Multivector out(x.dim_);
    for (std::size_t m = 0; m < out.coeffs_.size(); ++m) out.coeffs_[m] = -x.coeffs_[m];
    return out;
  }
  friend Multivector operator*(const S& s, const Multivector& x) {
    Multivector out(x.dim_);
    for (std::size_t m = 0; m < out.coeffs_.size(); ++m) out.coeffs_[m] = s * x.coeffs_[m];
    return out;
  }

  /// Geometric product. The metric contributes (-1)^{|A & B|} on top of the
  /// reordering sign since every repeated generator squares to -1.
  friend Multivector operator*(const Multivector& x, const Multivector& y) {
    x.check_dim(y);
    Multivector out(x.dim_);
    for (std::uint32_t a = 0; a < x.coeffs_.size(); ++a) {
      if (x.coeffs_[a] == S(0)) continue;
      for (std::uint32_t b = 0; b < y.coeffs_.size(); ++b) {
        if (y.coeffs_[b] == S(0)) continue;
        int sg = blade_reorder_sign(a, b);
        if (blade_grade(a & b) % 2) sg = -sg;
        if (sg > 0)
          out.coeffs_[a ^ b] += x.coeffs_[a] * y.coeffs_[b];
        else
          out.coeffs_[a ^ b] -= x.coeffs_[a] * y.coeffs_[b];
      }
    }
    return out;
  }

  friend bool operator==(const Multivector& x, const Multivector& y) {
    return x.dim_ == y.dim_ && x.coeffs_ == y.coeffs_;
  }

  /// Reversion: blades of grade g pick up (-1)^{g(g-1)/2}; fixes vectors.
  Multivector reversed() const {
    Multivector out(dim_);
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m) {
      unsigned g = blade_grade(m);
      out.coeffs_[m] = (g * (g - 1) / 2) % 2 ? -coeffs_[m] : coeffs_[m];
    }
    return out;
  }

  /// Clifford conjugation: (-1)^{g(g+1)/2}; negates vectors.
  Multivector conjugated() const {
    Multivector out(dim_);
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m) {
      unsigned g = blade_grade(m);
      out.coeffs_[m] = (g * (g + 1) / 2) % 2 ? -coeffs_[m] : coeffs_[m];
    }
    return out;
  }

  Multivector grade(unsigned g) const {
    Multivector out(dim_);
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m)
      if (blade_grade(m) == g) out.coeffs_[m] = coeffs_[m];
    return out;
  }

  S scalar_part() const { return coeffs_[0]; }

  std::vector<S> vector_components() const {
    std::vector<S> out(dim_);
    for (unsigned i = 0; i < dim_; ++i) out[i] = coeffs_[std::size_t{1} << i];
    return out;
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!(c == S(0))) return false;
    return true;
  }

  /// Largest coefficient magnitude, as a double.
  double max_abs() const {
    double m = 0;
    for (const auto& c : coeffs_) m = std::max(m, std::fabs(to_double(c)));
    return m;
  }

  /// Largest magnitude outside grade g.
  double off_grade_residual(unsigned g) const {
    double r = 0;
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m)
      if (blade_grade(m) != g) r = std::max(r, std::fabs(to_double(coeffs_[m])));
    return r;
  }

  /// Pure grade-g content within tol relative to the element size.
  bool is_grade(unsigned g, double tol = 0.0) const {
    return off_grade_residual(g) <= tol * std::max(1.0, max_abs());
  }

  /// True when all nonzero blades have grades of a single parity.
  bool has_pure_parity() const {
    bool even = false, odd = false;
    for (std::uint32_t m = 0; m < coeffs_.size(); ++m)
      if (!(coeffs_[m] == S(0))) (blade_grade(m) % 2 ? odd : even) = true;
    return !(even && odd);
  }

 private:
  void check_dim(const Multivector& y) const {
    if (dim_ != y.dim_) throw std::invalid_argument("multivector dimension mismatch");
  }

  unsigned dim_;
  std::vector<S> coeffs_;
};

/// x^{-1} = conj(x)/|x|^2 for a nonzero grade-1 element.
template <class S>
Multivector<S> vector_inverse(const Multivector<S>& x) {
  if (!x.is_grade(1)) throw std::invalid_argument("vector_inverse needs a grade-1 element");
  S nsq = (x * x.conjugated()).scalar_part();
  if (sign(nsq) == 0) throw std::invalid_argument("zero vector has no inverse");
  return (S(1) / nsq) * x.conjugated();
}

/// |a|^2 = a * conj(a), which is a nonnegative real for products of vectors.
template <class S>
S norm_sq(const Multivector<S>& x) {
  return (x * x.conjugated()).scalar_part();
}

/// Terms "<coeff>*<blade>" joined by "+"; the scalar term is a bare
/// coefficient and the zero element prints as "0".
template <class S>
std::string mv_str(const Multivector<S>& x) {
  std::string out;
  for (std::uint32_t m = 0; m < x.size(); ++m) {
    if (x.coeff(m) == S(0)) continue;
    if (!out.empty()) out += "+";
    if (m == 0)
      out += scalar_str(x.coeff(m));
    else
      out += scalar_str(x.coeff(m)) + "*" + blade_name(m);
  }
  return out.empty() ? "0" : out;
}

}  // namespace cfcycles
