// Acceptance suite: one PASS/FAIL line per criterion, with wall time.
//
// Criterion 10 compares the printed ED estimate for (P^n)^d with the exact
// Frobenius ED degree. Evaluated as printed, the ratio exact/estimate tends to
// (d-1)^d rather than 1, so its relative error grows with n. That criterion is
// expected to fail; it is reported as FAIL and does not change the exit code.
// Any other failure does.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "segre/asympt.hpp"
#include "segre/cli.hpp"
#include "segre/eddeg.hpp"
#include "segre/hyperdet.hpp"
#include "segre/polar.hpp"

using namespace segre;

namespace {

const std::set<int> kKnownUnattainable{10};

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string cli(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  const int rc = cli::run(args, out, err);
  if (code) *code = rc;
  return out.str();
}

// Coefficient of x^k in [sum_i (1 - i) e_i(x)]^{-2} by direct expansion of
// sum_j (j+1) S^j with S = 1 - H.
Integer low_order_gkz(const std::vector<int>& k) {
  const std::size_t d = k.size();
  using Sparse = std::vector<std::pair<std::vector<int>, Integer>>;
  auto fits = [&](const std::vector<int>& e) {
    for (std::size_t i = 0; i < d; ++i)
      if (e[i] > k[i]) return false;
    return true;
  };
  Sparse s;
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    std::vector<int> e(d);
    int size = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) e[i] = 1, ++size;
    if (fits(e)) s.emplace_back(e, Integer(size - 1));
  }
  int total = 0;
  for (int v : k) total += v;
  Sparse power{{std::vector<int>(d, 0), Integer(1)}};
  Integer coefficient = 0;
  for (int j = 0; j <= total; ++j) {
    for (const auto& [e, c] : power)
      if (e == k) coefficient += (j + 1) * c;
    Sparse next;
    for (const auto& [ea, ca] : power)
      for (const auto& [eb, cb] : s) {
        std::vector<int> e(d);
        for (std::size_t i = 0; i < d; ++i) e[i] = ea[i] + eb[i];
        if (!fits(e)) continue;
        bool merged = false;
        for (auto& [en, cn] : next)
          if (en == e) cn += ca * cb, merged = true;
        if (!merged) next.emplace_back(e, ca * cb);
      }
    power = std::move(next);
  }
  return coefficient;
}

Rational leibniz_det(const ed::RationalMatrix& m) {
  std::vector<std::size_t> perm(m.rows);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  Rational det = 0;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t r = 0; r < m.rows; ++r) term *= m.at(r, perm[r]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

Outcome criterion1() {
  Outcome o;
  auto timed = [&](const std::vector<std::string>& args, const std::string& want) {
    const auto start = std::chrono::steady_clock::now();
    const std::string got = cli(args);
    const double t = seconds_since(start);
    o.expect(got == want + "\n", args[1] + " gave " + got);
    o.expect(t < 1.0, args[1] + " took " + std::to_string(t) + " s");
  };
  timed({"hyperdet", "1,1,1"}, "4");
  for (int k = 0; k <= 10; ++k) timed({"hyperdet", std::to_string(k) + "," + std::to_string(k)}, std::to_string(k + 1));
  timed({"hyperdet", "1,1,2"}, low_order_gkz({1, 1, 2}).get_str());
  o.expect(low_order_gkz({1, 1, 2}) == 6, "independent expansion of (1,1,2) is not 6");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::vector<int>, std::vector<long>>> rows{
      {{1, 1}, {2, 6, 8, 8, 8, 8}},
      {{1, 2}, {2, 8, 15, 18, 18, 18}},
      {{2, 2}, {3, 15, 37, 55, 61, 61}},
      {{2, 3}, {3, 18, 55, 104, 138, 148}},
  };
  for (const auto& [base, expected] : rows)
    for (int m = 0; m <= 5; ++m) {
      const std::string dims =
          std::to_string(base[0]) + "," + std::to_string(base[1]) + "," + std::to_string(m);
      const std::string got = cli({"eddeg", dims});
      o.expect(got == std::to_string(expected[static_cast<std::size_t>(m)]) + "\n", "eddeg " + dims + " gave " + got);
    }
  const double t = seconds_since(start);
  o.expect(t < 10.0, "table took " + std::to_string(t) + " s");
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& base : partition_formats(7)) {
    const long n = base.total();
    const auto rows = ed::stabilization_onset(base, n + 3);
    for (long m = n; m <= n + 3; ++m)
      o.expect(rows[static_cast<std::size_t>(m)].ed_degree == rows[static_cast<std::size_t>(n)].ed_degree,
               "base " + base.to_string() + " changes at m=" + std::to_string(m));
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (int d = 1; d <= 7; ++d)
    o.expect(ed::frobenius_ed_degree(Format(std::vector<int>(static_cast<std::size_t>(d), 1))) == factorial(d),
             "ED of (P^1)^" + std::to_string(d) + " is not d!");
  for (int d = 1; d <= 9; ++d)
    o.expect(hyperdet::binary_hyperdet_degree(d) ==
                 hyperdet::hyperdet_degree(Format(std::vector<int>(static_cast<std::size_t>(d), 1))),
             "binary closed form differs at d=" + std::to_string(d));
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (int n = 1; n <= 20; ++n)
    o.expect(ed::generic_ed_degree(Format({1, n})) == 4 * n + 2, "generic ED of P^1 x P^" + std::to_string(n));
  for (int n = 0; n <= 8; ++n)
    for (int w = 1; w <= 5; ++w) {
      Integer a, b;
      mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(2 * w - 1), static_cast<unsigned long>(n + 1));
      mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(w - 1), static_cast<unsigned long>(n + 1));
      o.expect(ed::generic_ed_degree(Format({n}, {w})) == (a - b) / w,
               "Veronese n=" + std::to_string(n) + " w=" + std::to_string(w));
    }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const std::vector<long> expected{4, 12, 24, 24, 24, 24};
  const auto x = polar::chern_data_projective_space_product(Format({1, 1}));
  for (int n = 0; n <= 5; ++n) {
    const Integer chern = polar::dual_profile(polar::chern_data_product(x, polar::chern_data_smooth_hypersurface(n, 2))).deltas.front();
    const Integer alpha = polar::delta0_product_with_hypersurface(x, n, 2);
    o.expect(chern == expected[static_cast<std::size_t>(n)], "Chern path n=" + std::to_string(n) + " gave " + chern.get_str());
    o.expect(alpha == chern, "alpha path n=" + std::to_string(n) + " gave " + alpha.get_str());
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (const auto& f : partition_formats(7)) {
    const Integer delta0 = polar::dual_profile(polar::chern_data_projective_space_product(f)).deltas.front();
    const Integer deg = hyperdet::hyperdet_degree(f);
    if (hyperdet::is_dual_nondefective(f)) {
      o.expect(delta0 == deg && deg > 0, "format " + f.to_string());
    } else {
      o.expect(delta0 == 0 && deg == 0, "defective format " + f.to_string());
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (int n = 0; n <= 30; ++n)
    for (int m = 0; m <= n; ++m) {
      o.expect(polar::identity_f(n, m), "f identity n=" + std::to_string(n) + " m=" + std::to_string(m));
      for (int i = 0; i <= m; ++i)
        o.expect(polar::identity_masterbinomial(n, m, i), "masterbinomial n=" + std::to_string(n));
    }
  for (int n = 1; n <= 30; ++n)
    for (int j = 1; j <= n; ++j) o.expect(polar::identity_g(n, j), "g identity n=" + std::to_string(n));
  o.expect(polar::stabilization_ratio_check(30, 30, 5).passed(), "alpha ratio");
  const double t = seconds_since(start);
  o.expect(t < 30.0, "identities took " + std::to_string(t) + " s");
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (int d = 3; d <= 10; ++d) {
    const auto rep = asympt::verify_rw_constants(d);
    o.expect(rep.passed(), rep.failures.empty() ? "" : rep.failures.front());
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto hyper = asympt::convergence_sweep(asympt::Formula::Hyperdet, 3, {5, 10, 20});
  o.expect(hyper.strictly_decreasing, "hyperdet error not decreasing");
  const double t = seconds_since(start);
  o.expect(t < 60.0, "exact side took " + std::to_string(t) + " s");
  for (auto f : {asympt::Formula::BinaryHyperdet, asympt::Formula::BinaryEdFrobenius, asympt::Formula::BinaryEdGeneric})
    o.expect(asympt::convergence_sweep(f, 0, {4, 8, 12}).strictly_decreasing, asympt::formula_name(f) + " not decreasing");
  const auto ed = asympt::convergence_sweep(asympt::Formula::EdFrobenius, 3, {5, 10, 20});
  if (!ed.strictly_decreasing) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "ED estimate error %.4f, %.4f, %.4f at n = 5, 10, 20 (exact/estimate -> 8)",
                  ed.points[0].rel_error, ed.points[1].rel_error, ed.points[2].rel_error);
    o.expect(false, buf);
  }
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  auto random_matrix = [&](std::size_t r, std::size_t c) {
    ed::RationalMatrix m(r, c);
    for (auto& v : m.entries) {
      v = Rational(num(rng), den(rng));
      v.canonicalize();
    }
    return m;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = random_matrix(3, 3);
    const auto coeffs = ed::matrix_ed_polynomial(t);
    const Rational det = leibniz_det(t);
    o.expect(coeffs.size() == 4 && coeffs[3] != 0, "3x3 polynomial degree is not 3");
    o.expect(coeffs[0] == det * det, "3x3 constant coefficient is not det^2");
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = random_matrix(2, 4);
    const auto coeffs = ed::matrix_ed_polynomial(t);
    o.expect(coeffs.front() == leibniz_det(t * t.transposed()), "2x4 constant coefficient is not det(t t^T)");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"hyperdeterminant degrees of small formats", criterion1},
      {"ED degrees of X x P^m table", criterion2},
      {"ED stabilization for base formats with N <= 7", criterion3},
      {"d! law and binary hyperdeterminant closed form", criterion4},
      {"generic ED degrees", criterion5},
      {"dual degree of (P^1 x P^1) x Q_n via both paths", criterion6},
      {"delta_0 equals hyperdeterminant degree for N <= 7", criterion7},
      {"binomial identity suites", criterion8},
      {"saddle-point constants for 3 <= d <= 10", criterion9},
      {"asymptotic convergence trends", criterion10},
      {"matrix ED polynomial", criterion11},
  };
  int unexpected = 0, expected_failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double t = seconds_since(start);
    std::printf("[%s] criterion %2d: %s (%.2f s)", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), t);
    if (!o.pass) {
      const bool known = kKnownUnattainable.count(id) > 0;
      std::printf(" -- %s%s", o.detail.c_str(), known ? " [known, documented]" : "");
      (known ? expected_failures : unexpected) += 1;
    }
    std::printf("\n");
  }
  std::printf("%zu criteria, %d unexpected failure(s), %d known failure(s)\n", criteria.size(), unexpected,
              expected_failures);
  return unexpected == 0 ? 0 : 1;
}
