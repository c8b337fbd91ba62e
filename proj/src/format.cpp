#include "segre/format.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace segre {

Format::Format(std::vector<int> d, std::vector<int> w) : dims(std::move(d)), weights(std::move(w)) {
  if (dims.empty()) throw std::invalid_argument("format needs at least one factor");
  for (int n : dims)
    if (n < 0) throw std::invalid_argument("format dims must be non-negative");
  if (!weights.empty()) {
    if (weights.size() != dims.size())
      throw std::invalid_argument("weights and dims differ in length");
    for (int v : weights)
      if (v < 1) throw std::invalid_argument("weights must be positive");
  }
  total();
}

long Format::total() const {
  long n = 0;
  for (int v : dims) {
    if (n > std::numeric_limits<long>::max() - v) throw std::overflow_error("format total overflows");
    n += v;
  }
  return n;
}

bool Format::unit_weights() const {
  return std::all_of(weights.begin(), weights.end(), [](int v) { return v == 1; });
}

int Format::common_weight() const {
  if (weights.empty()) return 1;
  const int w = weights.front();
  return std::all_of(weights.begin(), weights.end(), [w](int v) { return v == w; }) ? w : 0;
}

bool Format::is_boundary() const {
  const long big = *std::max_element(dims.begin(), dims.end());
  return 2 * big == total();
}

std::string Format::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  if (!unit_weights()) {
    os << ";w=";
    for (std::size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
  }
  return os.str();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  if (text.empty()) throw std::invalid_argument("empty integer list");
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("not a non-negative integer: '" + item + "' in '" + text + "'");
    if (item.size() > 9) throw std::invalid_argument("integer too large: " + item);
    out.push_back(std::stoi(item));
    pos = comma + 1;
  }
  return out;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& current, std::vector<Format>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    current.push_back(p);
    partitions_rec(remaining - p, p, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Format> partition_formats(int total_max) {
  std::vector<Format> out;
  std::vector<int> current;
  for (int total = 1; total <= total_max; ++total) partitions_rec(total, total, current, out);
  return out;
}

}  // namespace segre
