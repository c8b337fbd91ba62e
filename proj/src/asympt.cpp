#include "segre/asympt.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "segre/eddeg.hpp"
#include "segre/hyperdet.hpp"

namespace segre::asympt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_d3(int d, int n, const char* who) {
  if (d < 3) throw std::invalid_argument(std::string(who) + ": formula requires d >= 3");
  if (n < 1) throw std::invalid_argument(std::string(who) + ": formula requires n >= 1");
}

double log_integer(const Integer& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

// log(sqrt(2 pi) d^{(2d+1)/2})
double log_stirling_core(int d) { return 0.5 * std::log(kTwoPi) + (d + 0.5) * std::log(static_cast<double>(d)); }

double log_binary_generic(int d) {
  // ln(2^{d+1} e - 1) = (d+1) ln 2 + 1 + ln(1 - 1/(2^{d+1} e))
  const double big = (d + 1) * std::numbers::ln2 + 1.0;
  return log_stirling_core(d) - (d + 2) + big + std::log1p(-std::exp(-big));
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_power(const Rational& base, long e) {
  Rational r = 1;
  for (long k = 0; k < (e < 0 ? -e : e); ++k) r *= base;
  return e < 0 ? Rational(1 / r) : r;
}

}  // namespace

double log_hyperdet_asymptotic(int d, int n) {
  require_d3(d, n, "hyperdet_asymptotic");
  const double dm1 = d - 1.0;
  return (2.0 * d - 2.0) * std::log(dm1) - 0.5 * (d - 1.0) * std::log(kTwoPi * (d - 2.0)) -
         0.5 * (3.0 * d - 6.0) * std::log(static_cast<double>(d)) + d * static_cast<double>(n) * std::log(dm1) -
         0.5 * (d - 3.0) * std::log(static_cast<double>(n));
}

double log_ed_asymptotic(int d, int n) {
  require_d3(d, n, "ed_asymptotic");
  const double dm1 = d - 1.0;
  return (d - 1.0) * std::log(dm1) - 0.5 * (d - 1.0) * std::log(kTwoPi) - 0.5 * (3.0 * d - 1.0) * std::log(d - 2.0) -
         0.5 * (d - 2.0) * std::log(static_cast<double>(d)) + d * static_cast<double>(n) * std::log(dm1) -
         0.5 * (d - 1.0) * std::log(static_cast<double>(n));
}

double log_sv_hyperdet_asymptotic(int d, int n, int omega) {
  require_d3(d, n, "sv_hyperdet_asymptotic");
  if (omega < 1) throw std::invalid_argument("sv_hyperdet_asymptotic: weight must be positive");
  const double w = omega;
  const double wd = w * d;
  return (2.0 * d - 2.0) * std::log(wd - 1.0) - 0.5 * (d - 1.0) * std::log(kTwoPi * (wd - 2.0)) -
         0.5 * (4.0 * d - 5.0) * std::log(w) - 0.5 * (3.0 * d - 6.0) * std::log(static_cast<double>(d)) +
         d * static_cast<double>(n) * std::log(wd - 1.0) - 0.5 * (d - 3.0) * std::log(static_cast<double>(n));
}

double hyperdet_asymptotic(int d, int n) { return std::exp(log_hyperdet_asymptotic(d, n)); }
double ed_asymptotic(int d, int n) { return std::exp(log_ed_asymptotic(d, n)); }
double sv_hyperdet_asymptotic(int d, int n, int omega) { return std::exp(log_sv_hyperdet_asymptotic(d, n, omega)); }

BinaryEstimates binary_asymptotics(int d) {
  if (d < 2) throw std::invalid_argument("binary_asymptotics: need d >= 2");
  const double core = log_stirling_core(d);
  return {std::exp(core + std::log(d + 3.0) - (d + 2)), std::exp(core - d), std::exp(log_binary_generic(d))};
}

DiscriminantRatios discriminant_ratios(int n, int omega) {
  if (n < 1 || omega < 3) throw std::invalid_argument("discriminant_ratios: need n >= 1 and omega >= 3");
  DiscriminantRatios r;
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(omega - 1), static_cast<unsigned long>(n));
  r.discriminant_degree = (n + 1) * p;
  r.ed_frobenius = ed::veronese_frobenius_ed_degree(n, omega);
  r.ed_generic = ed::generic_ed_degree(Format({n}, {omega}));

  Rational rf(r.discriminant_degree, r.ed_frobenius);
  rf.canonicalize();
  Rational rg(r.discriminant_degree, r.ed_generic);
  rg.canonicalize();
  r.ratio_frobenius = to_double(rf);
  r.ratio_generic = to_double(rg);

  const double target_omega = (omega - 2.0) / (omega - 1.0) * n;
  const double target_gen = (n + 1.0) / (std::ldexp(1.0, n + 1) - 1.0);
  r.fixed_omega_ratio = r.ratio_frobenius / target_omega;
  r.fixed_n_ratio = r.ratio_frobenius / (n + 1.0);
  r.gen_ratio = r.ratio_generic / target_gen;
  return r;
}

RwConstantsReport verify_rw_constants(int d) {
  if (d < 3) throw std::invalid_argument("verify_rw_constants: need d >= 3");
  RwConstantsReport rep;
  rep.d = d;
  auto fail = [&](const std::string& what) { rep.failures.push_back("d=" + std::to_string(d) + ": " + what); };

  const Rational ci(1, d - 1);
  const Rational ratio(d, d - 1);
  const std::vector<Rational> c(static_cast<std::size_t>(d), ci);

  // Caps of 2 leave room for a square term, so d_ii H = 0 is a real check.
  const TruncatedPoly h = gkz_denominator(std::vector<int>(static_cast<std::size_t>(d), 2));
  rep.h_at_c = h.evaluate(c);
  if (rep.h_at_c != 0) fail("H(c) = " + rep.h_at_c.get_str() + ", expected 0");
  for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i)
    if (!h.derivative(i).derivative(i).is_zero()) fail("d_ii H is not identically zero for i=" + std::to_string(i + 1));

  // Every non-empty subset S of [d].
  for (unsigned long mask = 1; mask < (1UL << d); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      if (mask & (1UL << i)) idx.push_back(i + 1);
    const long k = static_cast<long>(idx.size());
    const Rational expected = -Rational(k) * rational_power(ratio, d - k - 1);
    const Rational got = rational_derivative_eval(d, idx);
    ++rep.partials_checked;
    if (got != expected) fail("partial over mask " + std::to_string(mask) + " = " + got.get_str());
  }

  // The constants of the smooth critical point c.
  const Rational dd = h.derivative(static_cast<std::size_t>(d - 1)).derivative(static_cast<std::size_t>(d - 1)).evaluate(c);
  const std::vector<int> last{d};
  const std::vector<int> first_last{1, d};
  const Rational d_last = rational_derivative_eval(d, last);
  const Rational d_first_last = rational_derivative_eval(d, first_last);
  if (d_last != -rational_power(ratio, d - 2)) fail("d_d H(c) = " + d_last.get_str());

  rep.q = 1 + ci * (dd - d_first_last) / d_last;
  Rational q_expected(d - 2, d);
  q_expected.canonicalize();
  if (rep.q != q_expected) fail("q = " + rep.q.get_str() + ", expected (d-2)/d");

  rep.hessian_det = Rational(d) * rational_power(rep.q, d - 1);
  Rational det_expected;
  {
    Integer num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(d - 2), static_cast<unsigned long>(d - 1));
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(d - 2));
    det_expected = Rational(num, den);
    det_expected.canonicalize();
  }
  if (rep.hessian_det != det_expected) fail("det g''(0) = " + rep.hessian_det.get_str());

  const Rational g_at_c = 1;
  const Rational denom = -ci * d_last;
  rep.l0 = g_at_c / (denom * denom);
  Rational l0_expected;
  {
    Integer num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(d - 1), static_cast<unsigned long>(2 * d - 2));
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(2 * d - 4));
    l0_expected = Rational(num, den);
    l0_expected.canonicalize();
  }
  if (rep.l0 != l0_expected) fail("L0 = " + rep.l0.get_str());
  return rep;
}

std::string formula_name(Formula f) {
  switch (f) {
    case Formula::Hyperdet: return "hyperdet";
    case Formula::EdFrobenius: return "ed";
    case Formula::SvHyperdet: return "sv-hyperdet";
    case Formula::BinaryHyperdet: return "binary-hyperdet";
    case Formula::BinaryEdFrobenius: return "binary-ed";
    case Formula::BinaryEdGeneric: return "binary-ed-generic";
  }
  return "unknown";
}

std::optional<Formula> parse_formula(const std::string& name) {
  for (Formula f : {Formula::Hyperdet, Formula::EdFrobenius, Formula::SvHyperdet, Formula::BinaryHyperdet,
                    Formula::BinaryEdFrobenius, Formula::BinaryEdGeneric})
    if (formula_name(f) == name) return f;
  return std::nullopt;
}

double relative_error(const Integer& exact, double log_estimate) {
  if (exact <= 0) return std::numeric_limits<double>::infinity();
  return std::fabs(std::expm1(log_estimate - log_integer(exact)));
}

AsymptoticReport convergence_sweep(Formula formula, int d, const std::vector<int>& grid, int omega,
                                   const Budget& budget) {
  AsymptoticReport rep{formula, d, omega, {}, false, 0.0};
  for (int n : grid) {
    SweepPoint pt{n, 0, 0.0, 0.0};
    double log_est = 0;
    switch (formula) {
      case Formula::Hyperdet:
        log_est = log_hyperdet_asymptotic(d, n);
        pt.exact = hyperdet::hyperdet_degree(Format(std::vector<int>(static_cast<std::size_t>(d), n)), budget);
        break;
      case Formula::EdFrobenius:
        log_est = log_ed_asymptotic(d, n);
        pt.exact = ed::frobenius_ed_degree(Format(std::vector<int>(static_cast<std::size_t>(d), n)), budget);
        break;
      case Formula::SvHyperdet:
        log_est = log_sv_hyperdet_asymptotic(d, n, omega);
        pt.exact = hyperdet::sv_hyperdet_degree(Format(std::vector<int>(static_cast<std::size_t>(d), n)), omega, budget);
        break;
      case Formula::BinaryHyperdet:
        log_est = log_stirling_core(n) + std::log(n + 3.0) - (n + 2);
        pt.exact = hyperdet::binary_hyperdet_degree(n);
        break;
      case Formula::BinaryEdFrobenius:
        log_est = log_stirling_core(n) - n;
        pt.exact = factorial(n);
        break;
      case Formula::BinaryEdGeneric:
        log_est = log_binary_generic(n);
        pt.exact = ed::binary_generic_ed_degree(n);
        break;
    }
    pt.estimate = std::exp(log_est);
    pt.rel_error = relative_error(pt.exact, log_est);
    rep.max_scaled_error = std::max(rep.max_scaled_error, pt.rel_error * n);
    rep.points.push_back(std::move(pt));
  }
  rep.strictly_decreasing = true;
  for (std::size_t k = 1; k < rep.points.size(); ++k)
    if (!(rep.points[k].rel_error < rep.points[k - 1].rel_error)) rep.strictly_decreasing = false;
  return rep;
}

}  // namespace segre::asympt
