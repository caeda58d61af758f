#include "convcode/hankel.hpp"

#include <set>
#include <string>
#include <utility>

#include "convcode/combinatorics.hpp"
#include "convcode/error.hpp"

namespace convcode {

namespace {

using IndexSet = std::vector<std::size_t>;
using MinorKey = std::pair<IndexSet, IndexSet>;

// Distinct minors whose bottom-right corner (rt, ct) has rt + ct == level.
// Row sets are normalised to start at zero.
std::vector<MinorKey> minors_at_level(std::size_t level) {
  std::set<MinorKey> seen;
  std::vector<MinorKey> out;
  for (std::size_t rt = 0; rt <= level; ++rt) {
    const std::size_t ct = level - rt;
    for (std::size_t extra = 0; extra <= std::min(rt, ct); ++extra) {
      for_each_combination(rt, extra, [&](std::span<const std::size_t> rs) {
        for_each_combination(ct, extra, [&](std::span<const std::size_t> cs) {
          IndexSet rows(rs.begin(), rs.end());
          rows.push_back(rt);
          IndexSet cols(cs.begin(), cs.end());
          cols.push_back(ct);
          const std::size_t shift = rows.front();
          for (auto& r : rows) r -= shift;
          for (auto& c : cols) c += shift;
          MinorKey key{std::move(rows), std::move(cols)};
          if (seen.insert(key).second) out.push_back(key);
          return true;
        });
        return true;
      });
    }
  }
  return out;
}

Element minor_det(const std::vector<Element>& b, const MinorKey& key) {
  const std::size_t t = key.first.size();
  Matrix m(b.front().field(), t, t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) m(i, j) = b[key.first[i] + key.second[j]];
  }
  return det(m);
}

}  // namespace

HankelArray::HankelArray(Field field, std::vector<Element> b)
    : field_(std::move(field)), b_(std::move(b)) {
  for (const auto& e : b_) {
    if (!(e.field() == field_)) throw Error(Errc::FieldMismatch, "Hankel value from another field");
  }
}

const Element& HankelArray::entry(std::size_t i, std::size_t j) const {
  if (!defined(i, j)) {
    throw Error(Errc::OutsideTriangle, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                           ") outside T_" + std::to_string(size()));
  }
  return b_[i + j];
}

Matrix HankelArray::submatrix(std::size_t row_start, std::size_t row_count,
                              std::span<const std::size_t> cols) const {
  Matrix out(field_, row_count, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (row_count > 0 && !defined(row_start + row_count - 1, cols[j])) {
      throw Error(Errc::OutsideTriangle, "submatrix leaves the triangle of T_" + std::to_string(size()));
    }
    for (std::size_t i = 0; i < row_count; ++i) out(i, j) = b_[row_start + i + cols[j]];
  }
  return out;
}

Matrix HankelArray::submatrix(std::size_t row_start, std::size_t row_count, std::size_t col_start,
                              std::size_t col_count) const {
  IndexSet cols(col_count);
  for (std::size_t j = 0; j < col_count; ++j) cols[j] = col_start + j;
  return submatrix(row_start, row_count, cols);
}

HankelArray cauchy_hankel(const Field& field, std::size_t m) {
  if (field.degree() != 1 || field.order() <= m) {
    throw Error(Errc::SizeExceedsField,
                "Cauchy form needs a prime field larger than " + std::to_string(m));
  }
  std::vector<Element> b;
  b.reserve(m);
  for (std::size_t t = 1; t <= m; ++t) b.push_back(field.from_u64(t).inv());
  return HankelArray(field, std::move(b));
}

HankelArray greedy_hankel(const Field& field, std::size_t m) {
  if (field.order() < m) {
    throw Error(Errc::SizeExceedsField, "T_" + std::to_string(m) + " needs q >= m, field is " +
                                            field.describe());
  }
  if (m == 0) return HankelArray(field, {});
  std::vector<std::vector<MinorKey>> levels(m);
  for (std::size_t k = 0; k < m; ++k) levels[k] = minors_at_level(k);

  std::vector<Element> b(m, field.zero());
  std::vector<mpz_class> cand(m, mpz_class(0));
  const mpz_class& q = field.order();
  std::size_t k = 0;
  cand[0] = 1;
  for (;;) {
    bool placed = false;
    while (cand[k] < q) {
      b[k] = field.from_integer(cand[k]);
      bool ok = true;
      for (const auto& key : levels[k]) {
        if (minor_det(b, key).is_zero()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        placed = true;
        break;
      }
      ++cand[k];
    }
    if (placed) {
      if (k + 1 == m) break;
      ++k;
      cand[k] = 1;
      continue;
    }
    if (k == 0) {
      throw Error(Errc::SearchExhausted,
                  "no superregular T_" + std::to_string(m) + " over " + field.describe());
    }
    --k;
    ++cand[k];
  }
  return HankelArray(field, std::move(b));
}

HankelArray build_superregular_hankel(const Field& field, std::size_t m) {
  if (field.order() < m) {
    throw Error(Errc::SizeExceedsField, "T_" + std::to_string(m) + " does not fit in " + field.describe());
  }
  if (field.degree() == 1 && field.order() > m) return cauchy_hankel(field, m);
  return greedy_hankel(field, m);
}

SuperregularityReport check_hankel_superregular(const HankelArray& t) {
  SuperregularityReport report;
  for (std::size_t k = 0; k < t.size() && report.superregular; ++k) {
    for (const auto& key : minors_at_level(k)) {
      ++report.minors_checked;
      if (minor_det(t.values(), key).is_zero()) {
        report.superregular = false;
        report.witness = Minor{key.first, key.second};
        break;
      }
    }
  }
  return report;
}

}  // namespace convcode
