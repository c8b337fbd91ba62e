#include "segre/hyperdet.hpp"

#include <algorithm>
#include <stdexcept>

namespace segre::hyperdet {

namespace {

void require_unit_weights(const Format& f, const char* who) {
  if (!f.unit_weights())
    throw std::invalid_argument(std::string(who) + ": format must have unit weights");
}

Integer inverse_square_coefficient(const Format& f, long omega, const Budget& budget) {
  const auto& caps = f.dims;
  budget.require_box(caps, "hyperdeterminant degree of format " + f.to_string());
  const TruncatedPoly series = series_inverse_square(gkz_denominator(caps, omega), budget);
  return series.coefficient(caps);
}

}  // namespace

bool is_dual_nondefective(const Format& f) {
  require_unit_weights(f, "is_dual_nondefective");
  if (f.factors() == 1) return f.dims[0] == 0;
  const long big = *std::max_element(f.dims.begin(), f.dims.end());
  return big <= f.total() - big;
}

Integer hyperdet_degree(const Format& f, const Budget& budget) {
  require_unit_weights(f, "hyperdet_degree");
  return inverse_square_coefficient(f, 1, budget);
}

Integer sv_hyperdet_degree(const Format& f, int omega, const Budget& budget) {
  if (omega < 1) throw std::invalid_argument("sv_hyperdet_degree: weight must be positive");
  const int stored = f.common_weight();
  if (stored == 0) throw std::invalid_argument("sv_hyperdet_degree: unequal weights are not supported");
  if (!f.weights.empty() && stored != omega)
    throw std::invalid_argument("sv_hyperdet_degree: stored weight " + std::to_string(stored) +
                                " disagrees with omega " + std::to_string(omega));
  return inverse_square_coefficient(f, omega, budget);
}

Integer binary_hyperdet_degree(int d) {
  if (d < 1) throw std::invalid_argument("binary_hyperdet_degree: need d >= 1");
  Rational sum = 0;
  Rational power = 1;  // (-2)^i / i!
  for (int i = 0; i <= d; ++i) {
    if (i > 0) {
      power *= -2;
      power /= i;
    }
    sum += power * (d - i + 1);
  }
  sum *= Rational(factorial(d));
  if (sum.get_den() != 1) throw std::logic_error("binary_hyperdet_degree: non-integral result");
  return sum.get_num();
}

KernelComponents kernel_component_count(const Format& f, long m) {
  require_unit_weights(f, "kernel_component_count");
  const long n = f.total();
  if (m < n)
    throw std::invalid_argument("kernel_component_count: need m >= N = " + std::to_string(n));
  std::vector<long> parts(f.dims.begin(), f.dims.end());
  return {multinomial(parts), m - n};
}

}  // namespace segre::hyperdet
