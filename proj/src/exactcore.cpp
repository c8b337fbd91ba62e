#include "segre/exactcore.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace segre {

namespace {

constexpr std::uint64_t kNoIndex = std::numeric_limits<std::uint64_t>::max();

// Mixed-radix strides for the box of `caps`, variable 0 least significant.
std::vector<std::uint64_t> strides_for(std::span<const int> caps) {
  std::vector<std::uint64_t> strides(caps.size());
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    strides[i] = s;
    s *= static_cast<std::uint64_t>(caps[i]) + 1;
  }
  return strides;
}

std::uint64_t linear_index(const Exponent& e, std::span<const std::uint64_t> strides) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < e.size(); ++i) idx += static_cast<std::uint64_t>(e[i]) * strides[i];
  return idx;
}

Exponent decode_index(std::uint64_t idx, std::span<const int> caps) {
  Exponent e(caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    const auto radix = static_cast<std::uint64_t>(caps[i]) + 1;
    e[i] = static_cast<int>(idx % radix);
    idx /= radix;
  }
  return e;
}

}  // namespace

std::uint64_t box_size(std::span<const int> caps) {
  std::uint64_t size = 1;
  for (int c : caps) {
    if (c < 0) throw std::invalid_argument("negative exponent cap");
    const auto radix = static_cast<std::uint64_t>(c) + 1;
    if (size > std::numeric_limits<std::uint64_t>::max() / radix)
      throw CapExceeded(format_caps(caps), "exponent box " + format_caps(caps) +
                                                " overflows 64-bit indexing");
    size *= radix;
  }
  return size;
}

std::string format_caps(std::span<const int> caps) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < caps.size(); ++i) os << (i ? "," : "") << caps[i];
  os << ')';
  return os.str();
}

void Budget::require_box(std::span<const int> caps, const std::string& what) const {
  const std::uint64_t slots = box_size(caps);
  if (slots > max_bytes / kBytesPerCoefficient) {
    std::ostringstream os;
    os << what << ": exponent caps " << format_caps(caps) << " need " << slots
       << " dense coefficients (~" << slots * kBytesPerCoefficient
       << " bytes), over the memory cap of " << max_bytes << " bytes";
    throw CapExceeded("caps " + format_caps(caps), os.str());
  }
}

Integer binomial(long a, long b) {
  if (a < 0) throw std::invalid_argument("binomial: negative upper argument " + std::to_string(a));
  if (b < 0 || b > a) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

Integer factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument " + std::to_string(n));
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer multinomial(std::span<const long> parts) {
  Integer r = 1;
  long total = 0;
  for (long p : parts) {
    if (p < 0) throw std::invalid_argument("multinomial: negative part " + std::to_string(p));
    total += p;
    r *= binomial(total, p);
  }
  return r;
}

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  const long da = std::accumulate(a.begin(), a.end(), 0L);
  const long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------

TruncatedPoly::TruncatedPoly(std::vector<int> caps) : caps_(std::move(caps)) {
  for (int c : caps_)
    if (c < 0) throw std::invalid_argument("TruncatedPoly: negative cap");
}

TruncatedPoly TruncatedPoly::constant(std::vector<int> caps, const Integer& c) {
  TruncatedPoly p(std::move(caps));
  p.add_term(Exponent(p.vars(), 0), c);
  return p;
}

TruncatedPoly TruncatedPoly::variable(std::vector<int> caps, std::size_t index) {
  if (index >= caps.size()) throw std::out_of_range("TruncatedPoly::variable: index out of range");
  Exponent e(caps.size(), 0);
  e[index] = 1;
  return monomial(std::move(caps), e);
}

TruncatedPoly TruncatedPoly::monomial(std::vector<int> caps, const Exponent& e, const Integer& c) {
  TruncatedPoly p(std::move(caps));
  if (e.size() != p.vars()) throw std::invalid_argument("monomial: exponent length mismatch");
  p.add_term(e, c);
  return p;
}

bool TruncatedPoly::within_caps(const Exponent& e) const {
  if (e.size() != caps_.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 || e[i] > caps_[i]) return false;
  return true;
}

Integer TruncatedPoly::coefficient(const Exponent& e) const {
  if (!within_caps(e))
    throw std::out_of_range("coefficient: exponent " + format_caps(e) + " outside caps " +
                            format_caps(caps_));
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer TruncatedPoly::constant_term() const { return coefficient(Exponent(vars(), 0)); }

void TruncatedPoly::add_term(const Exponent& e, const Integer& c) {
  if (e.size() != caps_.size()) throw std::invalid_argument("add_term: exponent length mismatch");
  if (c == 0 || !within_caps(e)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void TruncatedPoly::check_same_caps(const TruncatedPoly& other) const {
  if (caps_ != other.caps_)
    throw std::invalid_argument("cap mismatch: " + format_caps(caps_) + " vs " +
                                format_caps(other.caps_));
}

TruncatedPoly& TruncatedPoly::operator+=(const TruncatedPoly& other) {
  check_same_caps(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

TruncatedPoly& TruncatedPoly::operator-=(const TruncatedPoly& other) {
  check_same_caps(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

TruncatedPoly& TruncatedPoly::operator*=(const Integer& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) {
  a.check_same_caps(b);
  TruncatedPoly out(a.caps_);
  if (a.is_zero() || b.is_zero()) return out;

  const auto strides = strides_for(a.caps_);
  box_size(a.caps_);  // overflow check for the linear indices below

  std::unordered_map<std::uint64_t, Integer> acc;
  acc.reserve(std::min<std::size_t>(a.term_count() * b.term_count(), std::size_t{1} << 20));
  Exponent sum(a.vars());
  for (const auto& [ea, ca] : a.terms_) {
    const std::uint64_t ia = linear_index(ea, strides);
    for (const auto& [eb, cb] : b.terms_) {
      bool fits = true;
      for (std::size_t i = 0; i < sum.size(); ++i) {
        if (ea[i] + eb[i] > a.caps_[i]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      Integer& slot = acc[ia + linear_index(eb, strides)];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  for (auto& [idx, c] : acc)
    if (c != 0) out.terms_.emplace(decode_index(idx, a.caps_), std::move(c));
  return out;
}

bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) {
  return a.caps_ == b.caps_ && a.terms_ == b.terms_;
}

TruncatedPoly TruncatedPoly::derivative(std::size_t index) const {
  if (index >= vars()) throw std::out_of_range("derivative: variable index out of range");
  TruncatedPoly out(caps_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponent d = e;
    --d[index];
    out.add_term(d, c * e[index]);
  }
  return out;
}

TruncatedPoly TruncatedPoly::homogeneous_part(int degree) const {
  TruncatedPoly out(caps_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) == degree) out.terms_.emplace(e, c);
  return out;
}

Rational TruncatedPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars()) throw std::invalid_argument("evaluate: point dimension mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), static_cast<unsigned long>(e[i]));
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), static_cast<unsigned long>(e[i]));
      p.canonicalize();
      term *= p;
    }
    sum += term;
  }
  return sum;
}

std::string TruncatedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool is_const = std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1 || is_const) {
      os << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << (need_star ? "*" : "") << 'x' << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

TruncatedPoly poly_mul(const TruncatedPoly& a, const TruncatedPoly& b) { return a * b; }

Integer product_coefficient(const TruncatedPoly& a, const TruncatedPoly& b, const Exponent& e) {
  if (a.caps() != b.caps()) throw std::invalid_argument("product_coefficient: cap mismatch");
  if (!a.within_caps(e)) throw std::out_of_range("product_coefficient: exponent outside caps");
  const auto& small = a.term_count() <= b.term_count() ? a : b;
  const auto& large = a.term_count() <= b.term_count() ? b : a;
  Integer sum = 0;
  Exponent rest(e.size());
  for (const auto& [ea, ca] : small.terms()) {
    bool ok = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      rest[i] = e[i] - ea[i];
      if (rest[i] < 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto it = large.terms().find(rest);
    if (it != large.terms().end()) mpz_addmul(sum.get_mpz_t(), ca.get_mpz_t(), it->second.get_mpz_t());
  }
  return sum;
}

Integer extract_coefficient(const TruncatedPoly& p, const Exponent& e) { return p.coefficient(e); }

TruncatedPoly elementary_symmetric(const std::vector<int>& caps, int i) {
  const int d = static_cast<int>(caps.size());
  if (i < 0 || i > d)
    throw std::invalid_argument("elementary_symmetric: index " + std::to_string(i) +
                                " outside [0," + std::to_string(d) + "]");
  TruncatedPoly out(caps);
  // Walk all i-subsets via a selection mask.
  std::vector<int> mask(static_cast<std::size_t>(d), 0);
  std::fill(mask.end() - i, mask.end(), 1);
  do {
    out.add_term(Exponent(mask.begin(), mask.end()), 1);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

TruncatedPoly series_inverse_square(const TruncatedPoly& h, const Budget& budget) {
  if (h.constant_term() != 1)
    throw std::invalid_argument("series_inverse_square: constant term must be 1, got " +
                                h.constant_term().get_str());
  const auto& caps = h.caps();
  budget.require_box(caps, "series_inverse_square");

  // G * P = 1 with P = h^2; solve G coefficient by coefficient in mixed-radix
  // order, which visits every alpha - beta (beta >= 0) before alpha.
  const TruncatedPoly square = h * h;
  std::vector<std::pair<Exponent, Integer>> tail;
  for (const auto& [e, c] : square.terms())
    if (std::any_of(e.begin(), e.end(), [](int v) { return v != 0; })) tail.emplace_back(e, c);
  const auto strides = strides_for(caps);
  std::vector<std::uint64_t> tail_index;
  tail_index.reserve(tail.size());
  for (const auto& [e, c] : tail) tail_index.push_back(linear_index(e, strides));

  const std::uint64_t size = box_size(caps);
  std::vector<Integer> g(size);
  Exponent alpha(caps.size(), 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    if (idx == 0) {
      g[0] = 1;
    } else {
      Integer acc = 0;
      for (std::size_t t = 0; t < tail.size(); ++t) {
        const Exponent& beta = tail[t].first;
        bool fits = true;
        for (std::size_t i = 0; i < beta.size(); ++i) {
          if (beta[i] > alpha[i]) {
            fits = false;
            break;
          }
        }
        if (fits) mpz_submul(acc.get_mpz_t(), tail[t].second.get_mpz_t(), g[idx - tail_index[t]].get_mpz_t());
      }
      g[idx] = std::move(acc);
    }
    // odometer increment of alpha
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] < caps[i]) {
        ++alpha[i];
        break;
      }
      alpha[i] = 0;
    }
  }

  TruncatedPoly out(caps);
  for (std::uint64_t idx = 0; idx < size; ++idx)
    if (g[idx] != 0) out.add_term(decode_index(idx, caps), g[idx]);
  return out;
}

TruncatedPoly gkz_denominator(const std::vector<int>& caps, long weight) {
  const int d = static_cast<int>(caps.size());
  TruncatedPoly h(caps);
  for (int i = 0; i <= d; ++i) {
    const Integer factor = 1 - weight * static_cast<long>(i);
    if (factor == 0) continue;
    h += elementary_symmetric(caps, i) * factor;
  }
  return h;
}

Rational rational_derivative_eval(int d, std::span<const int> indices) {
  if (d < 2) throw std::invalid_argument("rational_derivative_eval: need d >= 2");
  std::vector<int> seen;
  for (int i : indices) {
    if (i < 1 || i > d)
      throw std::invalid_argument("rational_derivative_eval: index " + std::to_string(i) +
                                  " outside [1," + std::to_string(d) + "]");
    if (std::find(seen.begin(), seen.end(), i) != seen.end())
      throw std::invalid_argument("rational_derivative_eval: repeated index " + std::to_string(i));
    seen.push_back(i);
  }
  // H is multilinear, so caps of 1 hold it exactly.
  TruncatedPoly p = gkz_denominator(std::vector<int>(static_cast<std::size_t>(d), 1));
  for (int i : indices) p = p.derivative(static_cast<std::size_t>(i - 1));
  const std::vector<Rational> c(static_cast<std::size_t>(d), Rational(1, d - 1));
  return p.evaluate(c);
}

}  // namespace segre
