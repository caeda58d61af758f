#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "convcode/gf.hpp"
#include "convcode/matrix.hpp"

namespace convcode {

/// Triangular array T_m with entry(i, j) = b[i + j], defined when
/// i + j < m (zero-based). Every square submatrix lying entirely inside the
/// triangle is nonsingular.
class HankelArray {
 public:
  HankelArray() = default;
  HankelArray(Field field, std::vector<Element> b);

  std::size_t size() const noexcept { return b_.size(); }
  const Field& field() const noexcept { return field_; }
  const std::vector<Element>& values() const noexcept { return b_; }

  bool defined(std::size_t i, std::size_t j) const noexcept { return i + j < b_.size(); }
  const Element& entry(std::size_t i, std::size_t j) const;

  /// Rows [row_start, row_start + row_count) and the listed columns.
  Matrix submatrix(std::size_t row_start, std::size_t row_count,
                   std::span<const std::size_t> cols) const;
  Matrix submatrix(std::size_t row_start, std::size_t row_count, std::size_t col_start,
                   std::size_t col_count) const;

  friend bool operator==(const HankelArray&, const HankelArray&) = default;

 private:
  Field field_;
  std::vector<Element> b_;
};

/// Cauchy closed form b_t = t^{-1}, t = 1..m. Needs a prime field with q > m.
HankelArray cauchy_hankel(const Field& field, std::size_t m);

/// Lexicographically least b (by canonical encoding) that keeps every
/// in-triangle minor nonzero, found by depth-first search with backtracking.
HankelArray greedy_hankel(const Field& field, std::size_t m);

/// Cauchy form when the field is prime and q > m, greedy search otherwise.
HankelArray build_superregular_hankel(const Field& field, std::size_t m);

/// Exhaustive check over all square submatrices inside the triangle. Minors
/// that coincide under the Hankel shift (rows - d, cols + d) are checked once.
SuperregularityReport check_hankel_superregular(const HankelArray& t);

}  // namespace convcode
