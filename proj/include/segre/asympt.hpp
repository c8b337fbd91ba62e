#pragma once

// Asymptotic estimates for hyperdeterminant and ED degrees, exact checks of
// the saddle-point constants behind them, and exact-vs-estimate diagnostics.
// All estimates are evaluated in log space and exponentiated last.

#include <optional>
#include <string>
#include <vector>

#include "segre/exactcore.hpp"

namespace segre::asympt {

/// N(n 1^d) for d >= 3, n -> infinity.
double hyperdet_asymptotic(int d, int n);
/// Frobenius ED degree of (P^n)^d for d >= 3, n -> infinity.
double ed_asymptotic(int d, int n);
/// Equal-weight Segre-Veronese hyperdeterminant, d >= 3.
double sv_hyperdet_asymptotic(int d, int n, int omega);

/// Natural logarithms of the same estimates; finite where the plain value overflows.
double log_hyperdet_asymptotic(int d, int n);
double log_ed_asymptotic(int d, int n);
double log_sv_hyperdet_asymptotic(int d, int n, int omega);

struct BinaryEstimates {
  double hyperdet;
  double ed_frobenius;
  double ed_generic;
};

/// (P^1)^d as d -> infinity.
BinaryEstimates binary_asymptotics(int d);

struct DiscriminantRatios {
  Integer discriminant_degree;  // (n+1)(omega-1)^n
  Integer ed_frobenius;
  Integer ed_generic;
  double ratio_frobenius;       // discriminant_degree / ed_frobenius
  double ratio_generic;         // discriminant_degree / ed_generic
  /// Each ratio divided by its asymptotic target; these tend to 1.
  double fixed_omega_ratio;     // vs (omega-2)/(omega-1) n, n -> infinity
  double fixed_n_ratio;         // vs n + 1, omega -> infinity
  double gen_ratio;             // vs (n+1)/(2^{n+1}-1), omega -> infinity
};

/// Veronese v_omega(P^n); requires n >= 1, omega >= 3.
DiscriminantRatios discriminant_ratios(int n, int omega);

struct RwConstantsReport {
  int d = 0;
  Rational h_at_c;
  Rational q;
  Rational hessian_det;
  Rational l0;
  long partials_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Exact verification at c = (1/(d-1), ..., 1/(d-1)) of H(c) = 0, every mixed
/// partial -d_S H(c) = |S| (d/(d-1))^{d-|S|-1}, d_ii H = 0, q = (d-2)/d,
/// det g''(0) = (d-2)^{d-1}/d^{d-2} and L_0 = (d-1)^{2d-2}/d^{2d-4}
/// (numerator G of the generating function is 1).
RwConstantsReport verify_rw_constants(int d);

enum class Formula {
  Hyperdet,           // N(n 1^d) vs hyperdet_asymptotic, sweep over n
  EdFrobenius,        // ED_F((P^n)^d) vs ed_asymptotic, sweep over n
  SvHyperdet,         // N(n 1^d; omega^d) vs sv_hyperdet_asymptotic, sweep over n
  BinaryHyperdet,     // N(1^d), sweep over d
  BinaryEdFrobenius,  // d!, sweep over d
  BinaryEdGeneric,    // generic ED of (P^1)^d, sweep over d
};

std::string formula_name(Formula f);
std::optional<Formula> parse_formula(const std::string& name);

struct SweepPoint {
  int n;  // the swept parameter (n, or d for the binary formulas)
  Integer exact;
  double estimate;
  double rel_error;
};

struct AsymptoticReport {
  Formula formula;
  int d;      // factor count (ignored by the binary formulas)
  int omega;  // Veronese weight (SvHyperdet only)
  std::vector<SweepPoint> points;
  bool strictly_decreasing = false;
  /// max over the grid of rel_error * n: bounded iff the error is O(1/n).
  double max_scaled_error = 0;
};

/// Exact value against estimate for each parameter in `grid`.
AsymptoticReport convergence_sweep(Formula formula, int d, const std::vector<int>& grid, int omega = 1,
                                   const Budget& budget = {});

/// Relative error |exact - estimate| / exact, computed from logarithms.
double relative_error(const Integer& exact, double log_estimate);

}  // namespace segre::asympt
