#pragma once

// Polar classes and dual degrees from (Chern-)Mather class degrees.
//
// Convention: c_j^M(Y) is the component of dimension m - j, and
//   delta_i(Y) = sum_{j=0}^{m-i} (-1)^j binom(m+1-j, i+1) deg(c_j^M(Y)).
// codim(Y^dual) - 1 is the least i with delta_i != 0; when the dual is a
// hypersurface its degree is delta_0.
//
// Externally sourced Mather class tables (e.g. ones following the opposite
// dimension convention) must be re-indexed to this convention by the caller.

#include <optional>
#include <string>
#include <vector>

#include "segre/exactcore.hpp"
#include "segre/format.hpp"

namespace segre::polar {

/// Total Chern class of a product of factors, each factor carrying its own
/// hyperplane class variable x_k with x_k^{dim_k + 1} = 0. The hyperplane
/// class of the Segre product is x_1 + ... + x_r, and the top monomial
/// x_1^{dim_1}...x_r^{dim_r} has degree prod(top_degrees).
struct ChernPolynomial {
  TruncatedPoly total_class;
  std::vector<Integer> top_degrees;
};

struct ChernData {
  int dim = 0;
  std::vector<Integer> class_degrees;  // deg c_0, ..., deg c_dim
  std::optional<ChernPolynomial> polynomial;
};

/// ChernData from externally supplied (Chern-)Mather class degrees.
ChernData chern_data_from_degrees(std::vector<Integer> class_degrees);

/// Segre product P^{n_1} x ... x P^{n_d}: c = prod (1 + x_i)^{n_i + 1}.
ChernData chern_data_projective_space_product(const Format& f);

/// Smooth degree-`deg_d` hypersurface Y_n in P^{n+1}: c = (1+y)^{n+2}/(1+deg_d y).
ChernData chern_data_smooth_hypersurface(int n, int deg_d);

/// Segre product of two varieties that both carry their Chern polynomial.
/// Throws std::invalid_argument otherwise.
ChernData chern_data_product(const ChernData& a, const ChernData& b);

Integer polar_class(const ChernData& cd, int i);

struct PolarProfile {
  std::vector<Integer> deltas;     // delta_0 .. delta_dim
  std::optional<int> dual_codim;   // empty when every delta vanishes
  /// delta_0 when the dual is a hypersurface.
  std::optional<Integer> dual_degree() const;
};

PolarProfile dual_profile(const ChernData& cd);

/// alpha_i(n, m, d) = sum_{s=i}^{n+m} (-1)^s (m+n+1-s)
///     [sum_{k=0}^{s-i} binom(n+2, k) (-d)^{s-i-k}] binom(m+n-s, n-s+i).
Integer alpha_coefficient(int n, int m, int deg_d, int i);

/// delta_0(X x Y_n) from the Chern-Mather degrees of X alone. The alpha_i
/// sum counts x^m y^n as 1; on X x Y_n that class has degree deg_d, which
/// is multiplied back in here.
Integer delta0_product_with_hypersurface(const ChernData& cd, int n, int deg_d);

struct RatioWitness {
  int m, n, d, i;
  Integer lhs, rhs;
};

struct RatioReport {
  long checked = 0;
  std::vector<RatioWitness> failures;
  bool passed() const { return failures.empty(); }
};

/// Checks alpha_i(n+1, m, d) = (d-1) alpha_i(n, m, d) for every
/// 0 <= m <= m_max, m <= n <= n_max, 2 <= d <= d_max, 0 <= i <= m.
RatioReport stabilization_ratio_check(int m_max, int n_max, int d_max);

/// (n+m+2-i) binom(m+n+1-i, n+1) (-1)^i against its defining alternating sum.
bool identity_masterbinomial(int n, int m, int i);

/// f(n) = sum_r (-1)^r binom(n+1, r+1) binom(m+n+1-r, m) equals
/// binom(m+n+2, m), and f satisfies
/// (1+n-m) f(n) + (n+3) f(n+1) = 2 Gamma(n+3+m) / (Gamma(n+2) Gamma(m+1)).
bool identity_f(int n, int m);

/// g(n, j) equals (n+2+j)!/((n+1)!(n+2)!), and g satisfies
/// (n+1-j) g(n,j) + (n^2+5n+6) g(n+1,j) = 2 Gamma(n+3+j) / Gamma(n+2)^2.
bool identity_g(int n, int j);

/// Gamma at a positive integer, as an exact factorial. Throws otherwise.
Integer gamma_int(long z);

}  // namespace segre::polar
