#pragma once

// Euclidean distance degrees of Segre and Segre-Veronese products.
//
// Frobenius metric: singular vector tuple count, i.e. the
// coefficient of h_1^{n_1}...h_d^{n_d} in
//   prod_i sum_{k=0}^{n_i} hhat_i^k h_i^{n_i-k},   hhat_i = sum_{j != i} h_j.
// Generic metric (transversal to the isotropic quadric): closed-form
// alternating sum over compositions.

#include <utility>
#include <vector>

#include "segre/exactcore.hpp"
#include "segre/format.hpp"

namespace segre::ed {

/// Frobenius ED degree. The one-factor case P^n is defined as 1.
Integer frobenius_ed_degree(const Format& f, const Budget& budget = {});

/// ED degree of the Veronese v_omega(P^n) for the Frobenius metric:
/// n+1 for omega = 2, ((omega-1)^{n+1} - 1)/(omega - 2) for omega > 2.
Integer veronese_frobenius_ed_degree(int n, int omega);

/// Generic ED degree of omega_1 P^{n_1} x ... x omega_d P^{n_d}.
Integer generic_ed_degree(const Format& f);

/// d! sum_{i=0}^{d} (-2)^i/i! (2^{d+1-i} - 1): generic ED degree of (P^1)^d.
Integer binary_generic_ed_degree(int d);

struct StabilizationRow {
  long m;
  Integer ed_degree;
};

/// Frobenius ED degrees of base x P^m for m = 0..m_max. Throws
/// std::logic_error if the values are not constant from m = N onwards.
std::vector<StabilizationRow> stabilization_onset(const Format& base, long m_max,
                                                  const Budget& budget = {});

struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> entries;  // row-major

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c);
  RationalMatrix(std::size_t r, std::size_t c, std::vector<Rational> values);

  Rational& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  RationalMatrix transposed() const;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Coefficients (ascending powers of eps^2) of det(t t^T - eps^2 I), where t is
/// transposed first if it has more rows than columns. The result has
/// rows + 1 entries and leading coefficient (-1)^rows.
std::vector<Rational> matrix_ed_polynomial(const RationalMatrix& t);

}  // namespace segre::ed
