#include <doctest.h>

#include "segre/hyperdet.hpp"
#include "segre/polar.hpp"

using namespace segre;

namespace {

Integer ipow(long base, long e) {
  Integer r = 1;
  for (long k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

TEST_SUITE("polar") {
  TEST_CASE("projective space has an empty dual") {
    for (int n = 1; n <= 6; ++n) {
      const auto p = polar::dual_profile(polar::chern_data_projective_space_product(Format({n})));
      for (int i = 0; i < n; ++i) CHECK(p.deltas[static_cast<std::size_t>(i)] == 0);
      CHECK(p.deltas.back() == 1);
      CHECK(p.dual_codim == n + 1);
      CHECK_FALSE(p.dual_degree().has_value());
    }
  }

  TEST_CASE("smooth hypersurfaces: dual degree e (e-1)^n") {
    for (int n = 1; n <= 5; ++n)
      for (int e = 2; e <= 5; ++e) {
        CAPTURE(n);
        CAPTURE(e);
        const auto cd = polar::chern_data_smooth_hypersurface(n, e);
        const auto p = polar::dual_profile(cd);
        REQUIRE(p.dual_degree().has_value());
        CHECK(*p.dual_degree() == e * ipow(e - 1, n));
      }
  }

  TEST_CASE("smooth conic has Chern degrees (2, 2)") {
    const auto conic = polar::chern_data_smooth_hypersurface(1, 2);
    REQUIRE(conic.class_degrees.size() == 2);
    CHECK(conic.class_degrees[0] == 2);
    CHECK(conic.class_degrees[1] == 2);
    CHECK(polar::polar_class(conic, 0) == 2);
  }

  TEST_CASE("delta_0 of a Segre product equals the hyperdeterminant degree") {
    for (const auto& f : partition_formats(6)) {
      CAPTURE(f.to_string());
      const auto p = polar::dual_profile(polar::chern_data_projective_space_product(f));
      CHECK(p.deltas.front() == hyperdet::hyperdet_degree(f));
      for (const auto& delta : p.deltas) CHECK(delta >= 0);
      CHECK(p.dual_codim.has_value());
      CHECK((*p.dual_codim == 1) == hyperdet::is_dual_nondefective(f));
    }
  }

  TEST_CASE("dual of 2x4 rank-one matrices has codimension 3") {
    const auto p = polar::dual_profile(polar::chern_data_projective_space_product(Format({1, 3})));
    CHECK(p.dual_codim == 3);
  }

  TEST_CASE("chern_data_product of P^1 and P^1 equals the Segre data") {
    const auto p1 = polar::chern_data_projective_space_product(Format({1}));
    const auto prod = polar::chern_data_product(p1, p1);
    const auto direct = polar::chern_data_projective_space_product(Format({1, 1}));
    CHECK(prod.class_degrees == direct.class_degrees);
    const auto no_poly = polar::chern_data_from_degrees({Integer(1), Integer(2)});
    CHECK_THROWS_AS(polar::chern_data_product(no_poly, p1), std::invalid_argument);
    CHECK(polar::dual_profile(no_poly).deltas == polar::dual_profile(p1).deltas);
  }

  TEST_CASE("P^1 x P^1 x Q_n through both paths") {
    const std::vector<long> expected{4, 12, 24, 24, 24, 24};
    const auto x = polar::chern_data_projective_space_product(Format({1, 1}));
    for (int n = 0; n <= 5; ++n) {
      const auto product = polar::chern_data_product(x, polar::chern_data_smooth_hypersurface(n, 2));
      CHECK(polar::dual_profile(product).deltas.front() == expected[static_cast<std::size_t>(n)]);
      CHECK(polar::delta0_product_with_hypersurface(x, n, 2) == expected[static_cast<std::size_t>(n)]);
    }
  }

  TEST_CASE("alpha shortcut agrees with the product for other bases and degrees") {
    for (const auto& f : partition_formats(3)) {
      const auto x = polar::chern_data_projective_space_product(f);
      for (int deg = 2; deg <= 4; ++deg)
        for (int n = 0; n <= 4; ++n) {
          CAPTURE(f.to_string());
          CAPTURE(deg);
          CAPTURE(n);
          const auto product = polar::chern_data_product(x, polar::chern_data_smooth_hypersurface(n, deg));
          CHECK(polar::delta0_product_with_hypersurface(x, n, deg) == polar::dual_profile(product).deltas.front());
        }
    }
  }

  TEST_CASE("alpha coefficient small values") {
    CHECK(2 * polar::alpha_coefficient(0, 0, 2, 0) == 2);
    CHECK(polar::alpha_coefficient(0, 0, 2, 0) == 1);
  }

  TEST_CASE("alpha ratio identity") {
    const auto rep = polar::stabilization_ratio_check(8, 12, 5);
    CHECK(rep.checked > 0);
    CHECK(rep.passed());
  }

  TEST_CASE("binomial identities over a small range") {
    for (int n = 0; n <= 12; ++n)
      for (int m = 0; m <= n; ++m) {
        CHECK(polar::identity_f(n, m));
        for (int i = 0; i <= m; ++i) CHECK(polar::identity_masterbinomial(n, m, i));
      }
    for (int n = 1; n <= 12; ++n)
      for (int j = 1; j <= n; ++j) CHECK(polar::identity_g(n, j));
  }

  TEST_CASE("gamma at integers") {
    CHECK(polar::gamma_int(1) == 1);
    CHECK(polar::gamma_int(6) == 120);
    CHECK_THROWS_AS(polar::gamma_int(0), std::domain_error);
  }

  TEST_CASE("polar_class range") {
    const auto x = polar::chern_data_projective_space_product(Format({1, 1}));
    CHECK_THROWS(polar::polar_class(x, 3));
    CHECK_THROWS(polar::polar_class(x, -1));
  }
}
