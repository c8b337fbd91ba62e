#pragma once

#include <string>
#include <vector>

namespace segre {

/// Tensor format (n_1, ..., n_d): the Segre(-Veronese) product
/// P^{n_1} x ... x P^{n_d}, optionally with Veronese weights.
struct Format {
  std::vector<int> dims;
  std::vector<int> weights;  // empty means all 1

  Format() = default;
  explicit Format(std::vector<int> d, std::vector<int> w = {});

  std::size_t factors() const noexcept { return dims.size(); }
  /// N = sum of the dims.
  long total() const;
  int weight(std::size_t i) const { return weights.empty() ? 1 : weights[i]; }
  bool unit_weights() const;
  /// Common weight if all weights agree, 0 otherwise.
  int common_weight() const;
  /// n_j = sum of the others for the largest n_j.
  bool is_boundary() const;

  std::string to_string() const;
};

/// Parses "n1,n2,..." (non-negative integers). Throws std::invalid_argument.
std::vector<int> parse_int_list(const std::string& text);

/// Every format with dims in non-increasing order, all dims >= 1 and
/// 1 <= sum <= total_max (integer partitions), ordered by total then
/// reverse-lexicographically. Permutations are omitted.
std::vector<Format> partition_formats(int total_max);

}  // namespace segre
