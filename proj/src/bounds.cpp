#include "convcode/bounds.hpp"

#include <algorithm>

namespace convcode {

std::size_t read_lower_bound_per_stripe(const MergeParams& p) {
  if (p.r_initial >= p.r_final) return std::min(p.k_initial, p.r_final);
  return p.k_initial;
}

std::size_t access_lower_bound(const MergeParams& p) {
  return p.r_final + p.lambda * read_lower_bound_per_stripe(p);
}

std::size_t max_unchanged(const MergeParams& p) { return p.k_final(); }

std::size_t baseline_access(const MergeParams& p) { return p.n_final(); }

}  // namespace convcode
