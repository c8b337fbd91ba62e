#include "segre/polar.hpp"

#include <numeric>
#include <stdexcept>

namespace segre::polar {

namespace {

// Degrees deg(c_j) = [x^top] c_j (x_1 + ... + x_r)^{m-j} * prod(top_degrees).
std::vector<Integer> degrees_from_polynomial(const ChernPolynomial& cp) {
  const auto& caps = cp.total_class.caps();
  const int m = std::accumulate(caps.begin(), caps.end(), 0);
  Integer scale = 1;
  for (const auto& t : cp.top_degrees) scale *= t;

  TruncatedPoly hyperplane(caps);
  for (std::size_t k = 0; k < caps.size(); ++k) hyperplane += TruncatedPoly::variable(caps, k);
  // powers[p] = h^p
  std::vector<TruncatedPoly> powers{TruncatedPoly::constant(caps, 1)};
  for (int p = 1; p <= m; ++p) powers.push_back(powers.back() * hyperplane);

  std::vector<Integer> degrees;
  for (int j = 0; j <= m; ++j) {
    const TruncatedPoly cj = cp.total_class.homogeneous_part(j);
    degrees.push_back(product_coefficient(cj, powers[static_cast<std::size_t>(m - j)], caps) * scale);
  }
  return degrees;
}

ChernData from_polynomial(ChernPolynomial cp) {
  ChernData cd;
  const auto& caps = cp.total_class.caps();
  cd.dim = std::accumulate(caps.begin(), caps.end(), 0);
  cd.class_degrees = degrees_from_polynomial(cp);
  cd.polynomial = std::move(cp);
  return cd;
}

// Re-embed p into a ring with more variables, shifting its variables by `offset`.
TruncatedPoly embed(const TruncatedPoly& p, const std::vector<int>& caps, std::size_t offset) {
  TruncatedPoly out(caps);
  for (const auto& [e, c] : p.terms()) {
    Exponent wide(caps.size(), 0);
    std::copy(e.begin(), e.end(), wide.begin() + static_cast<std::ptrdiff_t>(offset));
    out.add_term(wide, c);
  }
  return out;
}

}  // namespace

ChernData chern_data_from_degrees(std::vector<Integer> class_degrees) {
  if (class_degrees.empty()) throw std::invalid_argument("ChernData needs at least deg(c_0)");
  if (class_degrees.front() < 1) throw std::invalid_argument("ChernData: deg(c_0) must be positive");
  ChernData cd;
  cd.dim = static_cast<int>(class_degrees.size()) - 1;
  cd.class_degrees = std::move(class_degrees);
  return cd;
}

ChernData chern_data_projective_space_product(const Format& f) {
  if (!f.unit_weights()) throw std::invalid_argument("chern_data_projective_space_product: unit weights only");
  const auto& caps = f.dims;
  TruncatedPoly total = TruncatedPoly::constant(caps, 1);
  for (std::size_t k = 0; k < caps.size(); ++k) {
    TruncatedPoly factor(caps);
    for (int j = 0; j <= caps[k]; ++j) {
      Exponent e(caps.size(), 0);
      e[k] = j;
      factor.add_term(e, binomial(caps[k] + 1, j));
    }
    total = total * factor;
  }
  return from_polynomial({std::move(total), std::vector<Integer>(caps.size(), Integer(1))});
}

ChernData chern_data_smooth_hypersurface(int n, int deg_d) {
  if (n < 0) throw std::invalid_argument("chern_data_smooth_hypersurface: need n >= 0");
  if (deg_d < 1) throw std::invalid_argument("chern_data_smooth_hypersurface: need degree >= 1");
  const std::vector<int> caps{n};
  TruncatedPoly total(caps);
  // [y^j] (1+y)^{n+2} / (1 + d y) = sum_{k<=j} binom(n+2, k) (-d)^{j-k}
  for (int j = 0; j <= n; ++j) {
    Integer coeff = 0;
    for (int k = 0; k <= j; ++k) {
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(deg_d), static_cast<unsigned long>(j - k));
      if ((j - k) % 2) p = -p;
      coeff += binomial(n + 2, k) * p;
    }
    total.add_term({j}, coeff);
  }
  return from_polynomial({std::move(total), {Integer(deg_d)}});
}

ChernData chern_data_product(const ChernData& a, const ChernData& b) {
  if (!a.polynomial || !b.polynomial)
    throw std::invalid_argument("chern_data_product: both factors must carry their Chern polynomial");
  const auto& ca = a.polynomial->total_class.caps();
  const auto& cb = b.polynomial->total_class.caps();
  std::vector<int> caps(ca);
  caps.insert(caps.end(), cb.begin(), cb.end());

  TruncatedPoly total = embed(a.polynomial->total_class, caps, 0) * embed(b.polynomial->total_class, caps, ca.size());
  std::vector<Integer> tops(a.polynomial->top_degrees);
  tops.insert(tops.end(), b.polynomial->top_degrees.begin(), b.polynomial->top_degrees.end());
  return from_polynomial({std::move(total), std::move(tops)});
}

Integer polar_class(const ChernData& cd, int i) {
  const int m = cd.dim;
  if (i < 0 || i > m)
    throw std::out_of_range("polar_class: index " + std::to_string(i) + " outside [0," + std::to_string(m) + "]");
  Integer delta = 0;
  for (int j = 0; j <= m - i; ++j) {
    const Integer term = binomial(m + 1 - j, i + 1) * cd.class_degrees[static_cast<std::size_t>(j)];
    if (j % 2) delta -= term;
    else delta += term;
  }
  return delta;
}

std::optional<Integer> PolarProfile::dual_degree() const {
  if (dual_codim == 1) return deltas.front();
  return std::nullopt;
}

PolarProfile dual_profile(const ChernData& cd) {
  PolarProfile p;
  for (int i = 0; i <= cd.dim; ++i) {
    p.deltas.push_back(polar_class(cd, i));
    if (!p.dual_codim && p.deltas.back() != 0) p.dual_codim = i + 1;
  }
  return p;
}

Integer alpha_coefficient(int n, int m, int deg_d, int i) {
  if (n < 0 || m < 0 || deg_d < 1 || i < 0 || i > m)
    throw std::invalid_argument("alpha_coefficient: need n, m >= 0, deg_d >= 1, 0 <= i <= m");
  Integer alpha = 0;
  for (int s = i; s <= n + m; ++s) {
    Integer bracket = 0;
    for (int k = 0; k <= s - i; ++k) {
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(deg_d), static_cast<unsigned long>(s - i - k));
      if ((s - i - k) % 2) p = -p;
      bracket += binomial(n + 2, k) * p;
    }
    Integer term = (m + n + 1 - s) * bracket * binomial(m + n - s, n - s + i);
    if (s % 2) alpha -= term;
    else alpha += term;
  }
  return alpha;
}

Integer delta0_product_with_hypersurface(const ChernData& cd, int n, int deg_d) {
  Integer sum = 0;
  for (int i = 0; i <= cd.dim; ++i)
    sum += alpha_coefficient(n, cd.dim, deg_d, i) * cd.class_degrees[static_cast<std::size_t>(i)];
  return sum * deg_d;
}

RatioReport stabilization_ratio_check(int m_max, int n_max, int d_max) {
  RatioReport report;
  for (int m = 0; m <= m_max; ++m)
    for (int n = m; n <= n_max; ++n)
      for (int d = 2; d <= d_max; ++d)
        for (int i = 0; i <= m; ++i) {
          Integer lhs = alpha_coefficient(n + 1, m, d, i);
          Integer rhs = (d - 1) * alpha_coefficient(n, m, d, i);
          ++report.checked;
          if (lhs != rhs) report.failures.push_back({m, n, d, i, std::move(lhs), std::move(rhs)});
        }
  return report;
}

Integer gamma_int(long z) {
  if (z < 1) throw std::domain_error("gamma_int: argument " + std::to_string(z) + " is not a positive integer");
  return factorial(z - 1);
}

bool identity_masterbinomial(int n, int m, int i) {
  if (m < 0 || n < m || i < 0 || i > m)
    throw std::invalid_argument("identity_masterbinomial: need n >= m >= 0 and 0 <= i <= m");
  Integer lhs = 0;
  for (int r = i; r <= n + m; ++r) {
    Integer term = (m + n + 1 - r) * binomial(n + 2, r + 1 - i) * binomial(m + n - r, n - r + i);
    if (r % 2) lhs -= term;
    else lhs += term;
  }
  Integer rhs = (n + m + 2 - i) * binomial(m + n + 1 - i, n + 1);
  if (i % 2) rhs = -rhs;
  return lhs == rhs;
}

namespace {

Integer f_sum(int n, int m) {
  Integer f = 0;
  for (int r = 0; r <= n; ++r) {
    Integer term = binomial(n + 1, r + 1) * binomial(m + n + 1 - r, m);
    if (r % 2) f -= term;
    else f += term;
  }
  return f;
}

Rational g_sum(int n, int j) {
  Rational g = 0;
  for (int s = 0; s <= n; ++s) {
    Rational term(factorial(n + 1 - s + j), gamma_int(n + 2 - s) * factorial(s + 1) * gamma_int(n - s + 1));
    term.canonicalize();
    if (s % 2) g -= term;
    else g += term;
  }
  return g;
}

Rational g_closed(int n, int j) {
  Rational h(factorial(n + 2 + j), factorial(n + 1) * factorial(n + 2));
  h.canonicalize();
  return h;
}

}  // namespace

bool identity_f(int n, int m) {
  if (m < 0 || n < m) throw std::invalid_argument("identity_f: need n >= m >= 0");
  const Integer fn = f_sum(n, m);
  if (fn != binomial(m + n + 2, m)) return false;
  const Integer lhs = (1 + n - m) * fn + (n + 3) * f_sum(n + 1, m);
  Rational rhs(2 * gamma_int(n + 3 + m), gamma_int(n + 2) * gamma_int(m + 1));
  rhs.canonicalize();
  return Rational(lhs) == rhs;
}

bool identity_g(int n, int j) {
  if (j < 1 || n < j) throw std::invalid_argument("identity_g: need n >= j >= 1");
  const Rational gn = g_sum(n, j);
  if (gn != g_closed(n, j)) return false;
  const Rational lhs = Rational(n + 1 - j) * gn + Rational(n * n + 5 * n + 6) * g_sum(n + 1, j);
  Rational rhs(2 * gamma_int(n + 3 + j), gamma_int(n + 2) * gamma_int(n + 2));
  rhs.canonicalize();
  return lhs == rhs;
}

}  // namespace segre::polar
