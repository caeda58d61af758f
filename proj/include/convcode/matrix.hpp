#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "convcode/gf.hpp"

namespace convcode {

using gf::Element;
using gf::Field;

/// Dense row-major matrix over a finite field. Indices are zero-based.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix diag(const Field& field, std::span<const Element> values);
  static Matrix from_integers(const Field& field, std::size_t rows, std::size_t cols,
                              std::span<const std::uint64_t> row_major);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return field_; }

  Element& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<Element> column(std::size_t c) const;
  /// Keeps the given index order.
  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  Matrix block(std::size_t row0, std::size_t nrows, std::size_t col0, std::size_t ncols) const;
  Matrix transpose() const;

  std::vector<Element> apply(std::span<const Element> x) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> a_;
};

Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix vconcat(const Matrix& a, const Matrix& b);

Element det(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Solves a x = b for square nonsingular a.
std::vector<Element> solve(const Matrix& a, std::span<const Element> b);
Matrix inverse(const Matrix& a);

struct Minor {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

struct SuperregularityReport {
  bool superregular = true;
  /// First singular minor, ordered by size, then row set, then column set.
  std::optional<Minor> witness;
  std::uint64_t minors_checked = 0;
};

/// Enumerates every square submatrix of every size.
SuperregularityReport check_superregular(const Matrix& m);
inline bool is_superregular(const Matrix& m) { return check_superregular(m).superregular; }

/// Number of square submatrices of a rows x cols matrix.
std::uint64_t square_minor_count(std::size_t rows, std::size_t cols);

}  // namespace convcode
