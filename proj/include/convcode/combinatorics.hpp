#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace convcode {

/// Calls visit(span of k ascending indices) for every k-subset of [0, n) in
/// lexicographic order. Stops early and returns false as soon as visit
/// returns false.
template <class Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    if (!visit(std::span<const std::size_t>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace convcode
