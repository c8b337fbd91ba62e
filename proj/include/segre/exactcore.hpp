#pragma once

// Exact arithmetic primitives: GMP-backed integers and rationals, binomials,
// and the truncated multivariate polynomial ring
//   Z[x_1, ..., x_d] / (x_1^{c_1+1}, ..., x_d^{c_d+1})
// that every degree computation in this library is expressed in.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace segre {

using Integer = mpz_class;
using Rational = mpq_class;

/// Multi-index of a monomial, one non-negative entry per variable.
using Exponent = std::vector<int>;

/// Raised when a computation would need more memory than its Budget allows.
/// `cap()` names the limiting resource in human-readable form.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string cap, const std::string& what)
      : std::runtime_error(what), cap_(std::move(cap)) {}
  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

/// Memory guard for dense intermediate boxes of coefficients.
struct Budget {
  static constexpr std::uint64_t kDefaultBytes = std::uint64_t{2} << 30;
  // Rough footprint of one dense coefficient slot (mpz header plus limbs).
  static constexpr std::uint64_t kBytesPerCoefficient = 64;

  std::uint64_t max_bytes = kDefaultBytes;

  /// Throws CapExceeded unless a dense box with the given caps fits.
  /// `what` names the computation in the error message.
  void require_box(std::span<const int> caps, const std::string& what) const;
};

/// Number of exponents in the box [0,c_1] x ... x [0,c_d]; throws CapExceeded
/// if it does not fit in 64 bits.
std::uint64_t box_size(std::span<const int> caps);

std::string format_caps(std::span<const int> caps);

/// Binomial coefficient with the convention binom(a, b) = 0 for b < 0 or b > a.
Integer binomial(long a, long b);
Integer factorial(long n);
/// (sum of parts)! / prod(parts_i!)
Integer multinomial(std::span<const long> parts);

/// Graded lexicographic order: total degree first, then lexicographic with
/// x_1 the most significant variable.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class TruncatedPoly {
 public:
  using TermMap = std::map<Exponent, Integer, GradedLexLess>;

  explicit TruncatedPoly(std::vector<int> caps);

  static TruncatedPoly constant(std::vector<int> caps, const Integer& c);
  static TruncatedPoly variable(std::vector<int> caps, std::size_t index);
  /// c * x^e, or the zero polynomial when e exceeds the caps.
  static TruncatedPoly monomial(std::vector<int> caps, const Exponent& e,
                                const Integer& c = 1);

  const std::vector<int>& caps() const noexcept { return caps_; }
  std::size_t vars() const noexcept { return caps_.size(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }

  bool within_caps(const Exponent& e) const;

  /// Stored coefficient, or 0. Throws std::out_of_range if e exceeds the caps.
  Integer coefficient(const Exponent& e) const;
  Integer constant_term() const;

  /// Adds c * x^e; silently discards monomials beyond the caps.
  void add_term(const Exponent& e, const Integer& c);

  TruncatedPoly& operator+=(const TruncatedPoly& other);
  TruncatedPoly& operator-=(const TruncatedPoly& other);
  TruncatedPoly& operator*=(const Integer& scalar);

  friend TruncatedPoly operator+(TruncatedPoly a, const TruncatedPoly& b) { return a += b; }
  friend TruncatedPoly operator-(TruncatedPoly a, const TruncatedPoly& b) { return a -= b; }
  friend TruncatedPoly operator*(TruncatedPoly a, const Integer& s) { return a *= s; }
  friend TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b);
  friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b);

  /// Formal partial derivative with respect to variable `index`.
  TruncatedPoly derivative(std::size_t index) const;
  /// Sum of the terms of the given total degree.
  TruncatedPoly homogeneous_part(int degree) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Deterministic text form, terms in descending graded-lex order,
  /// e.g. "2*x1*x2 + x1 + 1".
  std::string to_string() const;

 private:
  void check_same_caps(const TruncatedPoly& other) const;

  std::vector<int> caps_;
  TermMap terms_;
};

TruncatedPoly poly_mul(const TruncatedPoly& a, const TruncatedPoly& b);

/// Coefficient of x^e in a*b, without forming the full product.
Integer product_coefficient(const TruncatedPoly& a, const TruncatedPoly& b,
                            const Exponent& e);

Integer extract_coefficient(const TruncatedPoly& p, const Exponent& e);

/// e_i(x_1, ..., x_d) in the ring with the given caps.
TruncatedPoly elementary_symmetric(const std::vector<int>& caps, int i);

/// Truncated expansion of 1/h^2. Requires h to have constant term 1.
TruncatedPoly series_inverse_square(const TruncatedPoly& h, const Budget& budget = {});

/// H_w(x) = sum_{i=0}^{d} (1 - w*i) e_i(x): the denominator of the
/// hyperdeterminant-degree generating function (w = 1 for Segre products,
/// w the common Veronese weight for Segre-Veronese products).
TruncatedPoly gkz_denominator(const std::vector<int>& caps, long weight = 1);

/// Mixed partial derivative of H (unit weight, d variables) with respect to
/// the distinct indices (1-based), evaluated at c = (1/(d-1), ..., 1/(d-1)).
Rational rational_derivative_eval(int d, std::span<const int> indices);

}  // namespace segre
