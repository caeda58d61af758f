#include "convcode/matrix.hpp"

#include <string>
#include <utility>

#include "convcode/combinatorics.hpp"
#include "convcode/error.hpp"

namespace convcode {

namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "matrices over different fields");
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::diag(const Field& field, std::span<const Element> values) {
  Matrix m(field, values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::from_integers(const Field& field, std::size_t rows, std::size_t cols,
                             std::span<const std::uint64_t> row_major) {
  if (row_major.size() != rows * cols) {
    throw Error(Errc::DimensionMismatch, "entry count does not match matrix shape");
  }
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < row_major.size(); ++i) m.a_[i] = field.from_u64(row_major[i]);
  return m;
}

std::vector<Element> Matrix::column(std::size_t c) const {
  std::vector<Element> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

Matrix Matrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  Matrix out(field_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i] >= rows_ || cols[j] >= cols_) {
        throw Error(Errc::DimensionMismatch, "submatrix index outside " + dims(*this));
      }
      out(i, j) = (*this)(rows[i], cols[j]);
    }
  }
  return out;
}

Matrix Matrix::block(std::size_t row0, std::size_t nrows, std::size_t col0, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) {
    throw Error(Errc::DimensionMismatch, "block outside " + dims(*this));
  }
  Matrix out(field_, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

std::vector<Element> Matrix::apply(std::span<const Element> x) const {
  if (x.size() != cols_) throw Error(Errc::DimensionMismatch, "vector length mismatch");
  std::vector<Element> y(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Element& e = (*this)(i, j);
      if (!e.is_zero()) y[i] += e * x[j];
    }
  }
  return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols_ != b.rows_) {
    throw Error(Errc::DimensionMismatch, "cannot multiply " + dims(a) + " by " + dims(b));
  }
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Element& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.a_ == b.a_;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "hconcat row mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

Matrix vconcat(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "vconcat column mismatch");
  Matrix out(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) out(a.rows() + i, j) = b(i, j);
  }
  return out;
}

Element det(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::NotSquare, "determinant of non-square " + dims(m));
  const std::size_t n = m.rows();
  Matrix a = m;
  Element result = m.field().one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return m.field().zero();
    if (piv != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(a(piv, j), a(c, j));
      result = -result;
    }
    result *= a(c, c);
    const Element pivot_inv = a(c, c).inv();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const Element f = a(r, c) * pivot_inv;
      for (std::size_t j = c + 1; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return result;
}

std::size_t rank(const Matrix& m) {
  Matrix a = m;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = c; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    }
    const Element pivot_inv = a(row, c).inv();
    for (std::size_t r = row + 1; r < a.rows(); ++r) {
      if (a(r, c).is_zero()) continue;
      const Element f = a(r, c) * pivot_inv;
      for (std::size_t j = c + 1; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
      a(r, c) = m.field().zero();
    }
    ++row;
  }
  return row;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::NotSquare, "inverse of non-square " + dims(m));
  const std::size_t n = m.rows();
  Matrix a = hconcat(m, Matrix::identity(m.field(), n));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) throw Error(Errc::SingularMatrix, "matrix is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(piv, j), a(c, j));
    }
    const Element pivot_inv = a(c, c).inv();
    for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) *= pivot_inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const Element f = a(r, c);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
      }
    }
  }
  return a.block(0, n, n, n);
}

std::vector<Element> solve(const Matrix& a, std::span<const Element> b) {
  if (a.rows() != a.cols()) throw Error(Errc::NotSquare, "solve needs a square system");
  if (b.size() != a.rows()) throw Error(Errc::DimensionMismatch, "right-hand side length mismatch");
  return inverse(a).apply(b);
}

SuperregularityReport check_superregular(const Matrix& m) {
  SuperregularityReport report;
  const std::size_t tmax = std::min(m.rows(), m.cols());
  for (std::size_t t = 1; t <= tmax && report.superregular; ++t) {
    for_each_combination(m.rows(), t, [&](std::span<const std::size_t> rows) {
      return for_each_combination(m.cols(), t, [&](std::span<const std::size_t> cols) {
        ++report.minors_checked;
        if (det(m.submatrix(rows, cols)).is_zero()) {
          report.superregular = false;
          report.witness = Minor{{rows.begin(), rows.end()}, {cols.begin(), cols.end()}};
          return false;
        }
        return true;
      });
    });
  }
  return report;
}

std::uint64_t square_minor_count(std::size_t rows, std::size_t cols) {
  std::uint64_t total = 0;
  for (std::size_t t = 1; t <= std::min(rows, cols); ++t) total += binomial(rows, t) * binomial(cols, t);
  return total;
}

}  // namespace convcode
