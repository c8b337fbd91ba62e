#include "segre/eddeg.hpp"

#include <stdexcept>

namespace segre::ed {

namespace {

// sum_{k=0}^{n_i} hhat_i^k h_i^{n_i-k} in the ring truncated at the format.
TruncatedPoly fo_factor(const std::vector<int>& caps, std::size_t i) {
  const int n = caps[i];
  TruncatedPoly hhat(caps);
  for (std::size_t j = 0; j < caps.size(); ++j)
    if (j != i) hhat += TruncatedPoly::variable(caps, j);

  TruncatedPoly out(caps);
  TruncatedPoly power = TruncatedPoly::constant(caps, 1);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) power = power * hhat;
    if (power.is_zero()) break;
    Exponent e(caps.size(), 0);
    e[i] = n - k;
    out += power * TruncatedPoly::monomial(caps, e);
  }
  return out;
}

}  // namespace

Integer frobenius_ed_degree(const Format& f, const Budget& budget) {
  if (!f.unit_weights())
    throw std::invalid_argument("frobenius_ed_degree: partially symmetric formats are not supported");
  if (f.factors() == 1) return 1;
  const auto& caps = f.dims;
  budget.require_box(caps, "Frobenius ED degree of format " + f.to_string());

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < caps.size(); ++i)
    if (caps[i] > 0) active.push_back(i);
  if (active.empty()) return 1;

  // Truncating after every product is exact: only the monomial at the caps is read.
  TruncatedPoly acc = TruncatedPoly::constant(caps, 1);
  for (std::size_t k = 0; k + 1 < active.size(); ++k) acc = acc * fo_factor(caps, active[k]);
  return product_coefficient(acc, fo_factor(caps, active.back()), caps);
}

Integer veronese_frobenius_ed_degree(int n, int omega) {
  if (n < 0) throw std::invalid_argument("veronese_frobenius_ed_degree: need n >= 0");
  if (omega < 2) throw std::invalid_argument("veronese_frobenius_ed_degree: need omega >= 2");
  if (omega == 2) return n + 1;
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(omega - 1), static_cast<unsigned long>(n + 1));
  return Integer((p - 1) / (omega - 2));
}

Integer generic_ed_degree(const Format& f) {
  const long big_n = f.total();
  // inner[j] = sum over i_1 + ... + i_d = j of
  //   prod_l binom(n_l+1, i_l) w_l^{n_l-i_l} / (n_l-i_l)!.
  // Terms with i_l = n_l + 1 carry 1/(-1)! = 0 and are dropped.
  std::vector<Rational> inner{Rational(1)};
  for (std::size_t l = 0; l < f.factors(); ++l) {
    const int n = f.dims[l];
    const Integer w = f.weight(l);
    std::vector<Rational> factor(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      Integer wp;
      mpz_pow_ui(wp.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(n - i));
      factor[static_cast<std::size_t>(i)] = Rational(binomial(n + 1, i) * wp, factorial(n - i));
      factor[static_cast<std::size_t>(i)].canonicalize();
    }
    std::vector<Rational> next(inner.size() + factor.size() - 1);
    for (std::size_t a = 0; a < inner.size(); ++a)
      for (std::size_t b = 0; b < factor.size(); ++b) next[a + b] += inner[a] * factor[b];
    inner = std::move(next);
  }

  Rational total = 0;
  for (long j = 0; j <= big_n; ++j) {
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(big_n + 1 - j));
    Rational term = Rational(two_pow - 1) * Rational(factorial(big_n - j)) * inner[static_cast<std::size_t>(j)];
    if (j % 2) total -= term;
    else total += term;
  }
  if (total.get_den() != 1) throw std::logic_error("generic_ed_degree: non-integral result");
  return total.get_num();
}

Integer binary_generic_ed_degree(int d) {
  if (d < 1) throw std::invalid_argument("binary_generic_ed_degree: need d >= 1");
  Rational sum = 0;
  Rational power = 1;  // (-2)^i / i!
  for (int i = 0; i <= d; ++i) {
    if (i > 0) {
      power *= -2;
      power /= i;
    }
    Integer two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(d + 1 - i));
    sum += power * Rational(two_pow - 1);
  }
  sum *= Rational(factorial(d));
  if (sum.get_den() != 1) throw std::logic_error("binary_generic_ed_degree: non-integral result");
  return sum.get_num();
}

std::vector<StabilizationRow> stabilization_onset(const Format& base, long m_max, const Budget& budget) {
  if (!base.unit_weights()) throw std::invalid_argument("stabilization_onset: unit weights required");
  const long n = base.total();
  if (m_max < n)
    throw std::invalid_argument("stabilization_onset: m_max must be at least N = " + std::to_string(n));
  std::vector<StabilizationRow> rows;
  for (long m = 0; m <= m_max; ++m) {
    std::vector<int> dims = base.dims;
    dims.push_back(static_cast<int>(m));
    rows.push_back({m, frobenius_ed_degree(Format(dims), budget)});
  }
  const Integer& stable = rows[static_cast<std::size_t>(n)].ed_degree;
  for (long m = n + 1; m <= m_max; ++m) {
    if (rows[static_cast<std::size_t>(m)].ed_degree != stable)
      throw std::logic_error("ED degree of " + base.to_string() + " x P^" + std::to_string(m) + " is " +
                             rows[static_cast<std::size_t>(m)].ed_degree.get_str() +
                             ", expected the boundary value " + stable.get_str());
  }
  return rows;
}

// ---------------------------------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

RationalMatrix::RationalMatrix(std::size_t r, std::size_t c, std::vector<Rational> values)
    : rows(r), cols(c), entries(std::move(values)) {
  if (entries.size() != r * c) throw std::invalid_argument("RationalMatrix: entry count mismatch");
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix product: dimension mismatch");
  RationalMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

std::vector<Rational> matrix_ed_polynomial(const RationalMatrix& t) {
  if (t.rows == 0 || t.cols == 0) throw std::invalid_argument("matrix_ed_polynomial: empty matrix");
  const RationalMatrix tt = t.rows <= t.cols ? t : t.transposed();
  const RationalMatrix gram = tt * tt.transposed();
  const std::size_t n = gram.rows;

  // Faddeev-LeVerrier: det(lambda I - G) = sum_k c[k] lambda^k, c[n] = 1.
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix aux(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    aux = gram * aux;
    for (std::size_t i = 0; i < n; ++i) aux.at(i, i) += c[n - k + 1];
    const RationalMatrix prod = gram * aux;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += prod.at(i, i);
    c[n - k] = -trace / Rational(static_cast<long>(k));
  }
  // det(G - lambda I) = (-1)^n det(lambda I - G)
  if (n % 2)
    for (auto& v : c) v = -v;
  return c;
}

}  // namespace segre::ed
