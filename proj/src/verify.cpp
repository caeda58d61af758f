#include "convcode/verify.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "convcode/combinatorics.hpp"
#include "convcode/error.hpp"

namespace convcode {

namespace {

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

void too_large(const std::string& what) { throw Error(Errc::InstanceTooLarge, what); }

// Whether span(source columns `cols`) contains every column of `targets`.
bool spans(const Matrix& source, std::span<const std::size_t> cols, const Matrix& targets) {
  if (targets.cols() == 0) return true;
  const auto rows = iota_vec(source.rows());
  const Matrix chosen = source.submatrix(rows, cols);
  if (cols.empty()) return rank(targets) == 0;
  return rank(chosen) == rank(hconcat(chosen, targets));
}

struct SubsetSearch {
  std::vector<std::size_t> best;
  std::uint64_t examined = 0;
};

// Smallest (then lexicographically first) column subset of `source` spanning
// `targets`.
SubsetSearch smallest_spanning_subset(const Matrix& source, const Matrix& targets) {
  if (source.cols() > kMaxStripeSearchColumns) {
    too_large("read-set search over " + std::to_string(source.cols()) + " columns");
  }
  SubsetSearch out;
  for (std::size_t t = 0; t <= source.cols(); ++t) {
    bool found = false;
    for_each_combination(source.cols(), t, [&](std::span<const std::size_t> cols) {
      ++out.examined;
      if (!spans(source, cols, targets)) return true;
      out.best.assign(cols.begin(), cols.end());
      found = true;
      return false;
    });
    if (found) return out;
  }
  throw Error(Errc::SingularSubmatrix, "targets are not in the span of the source columns");
}

Matrix band(const Matrix& m, std::size_t i, std::size_t k) { return m.block(i * k, k, 0, m.cols()); }

}  // namespace

Matrix systematic_generator(const Matrix& parity) {
  return hconcat(Matrix::identity(parity.field(), parity.rows()), parity);
}

Matrix embedded_generator(const ConvertibleCode& code) {
  const auto& p = code.params;
  const Matrix gi = code.generator_initial();
  Matrix out(code.field, p.k_final(), p.lambda * p.n_initial());
  for (std::size_t i = 0; i < p.lambda; ++i) {
    for (std::size_t j = 0; j < p.n_initial(); ++j) {
      for (std::size_t r = 0; r < p.k_initial; ++r) out(i * p.k_initial + r, i * p.n_initial() + j) = gi(r, j);
    }
  }
  return out;
}

Matrix new_final_columns(const ConvertibleCode& code) {
  const Matrix gf = code.generator_final();
  std::vector<bool> kept(gf.cols(), false);
  for (const auto& u : code.plan.unchanged) {
    if (u.position < kept.size()) kept[u.position] = true;
  }
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < gf.cols(); ++c) {
    if (!kept[c]) cols.push_back(c);
  }
  return gf.submatrix(iota_vec(gf.rows()), cols);
}

bool is_mds_by_erasure(const Matrix& g) {
  const std::size_t k = g.rows(), n = g.cols();
  if (k > n) return false;
  if (binomial(n, k) > kMaxErasurePatterns) {
    too_large("C(" + std::to_string(n) + "," + std::to_string(k) + ") erasure patterns");
  }
  const auto rows = iota_vec(k);
  return for_each_combination(n, k, [&](std::span<const std::size_t> cols) {
    return rank(g.submatrix(rows, cols)) == k;
  });
}

std::optional<std::vector<std::vector<std::size_t>>> block_constructible_witness(const Matrix& pf,
                                                                                   const Matrix& pi,
                                                                                   std::size_t t) {
  const std::size_t k = pi.rows();
  if (k == 0 || pf.rows() % k != 0) throw Error(Errc::DimensionMismatch, "PF rows are not a multiple of kI");
  if (binomial(pi.cols(), t) > kMaxConstructibleSubsets) {
    too_large("C(" + std::to_string(pi.cols()) + "," + std::to_string(t) + ") column subsets");
  }
  std::vector<std::vector<std::size_t>> witness;
  for (std::size_t i = 0; i < pf.rows() / k; ++i) {
    const Matrix target = band(pf, i, k);
    std::optional<std::vector<std::size_t>> found;
    for_each_combination(pi.cols(), t, [&](std::span<const std::size_t> cols) {
      if (!spans(pi, cols, target)) return true;
      found.emplace(cols.begin(), cols.end());
      return false;
    });
    if (!found) return std::nullopt;
    witness.push_back(std::move(*found));
  }
  return witness;
}

ReadSetSearch min_read_set_search(const ConvertibleCode& code) {
  const auto& p = code.params;
  const Matrix gi = code.generator_initial();
  const Matrix targets = new_final_columns(code);
  ReadSetSearch out;
  for (std::size_t i = 0; i < p.lambda; ++i) {
    const SubsetSearch s = smallest_spanning_subset(gi, band(targets, i, p.k_initial));
    out.per_stripe.push_back(s.best.size());
    out.min_reads += s.best.size();
    out.subsets_examined += s.examined;
    for (auto j : s.best) out.witness.push_back({i, j});
  }
  return out;
}

ReadSetSearch min_read_set_search_joint(const ConvertibleCode& code) {
  const auto& p = code.params;
  const std::size_t total = p.lambda * p.n_initial();
  if (total > kMaxJointSearchColumns) {
    too_large("joint read-set search over " + std::to_string(total) + " columns");
  }
  const SubsetSearch s = smallest_spanning_subset(embedded_generator(code), new_final_columns(code));
  ReadSetSearch out;
  out.per_stripe.assign(p.lambda, 0);
  out.min_reads = s.best.size();
  out.subsets_examined = s.examined;
  for (auto c : s.best) {
    const BlockRef ref{c / p.n_initial(), c % p.n_initial()};
    ++out.per_stripe[ref.stripe];
    out.witness.push_back(ref);
  }
  return out;
}

bool check_stability(const ConvertibleCode& code) {
  const auto& p = code.params;
  if (code.plan.new_blocks.size() != p.r_final) return false;
  if (code.plan.unchanged.size() != p.k_final()) return false;
  const Matrix emb = embedded_generator(code);
  const Matrix gf = code.generator_final();
  std::vector<std::size_t> per_stripe(p.lambda, 0);
  std::set<std::size_t> positions;
  std::set<BlockRef> sources;
  for (const auto& u : code.plan.unchanged) {
    if (u.from.stripe >= p.lambda || u.from.block >= p.n_initial() || u.position >= p.k_final()) return false;
    if (!positions.insert(u.position).second || !sources.insert(u.from).second) return false;
    if (++per_stripe[u.from.stripe] > p.k_initial) return false;
    const std::size_t col = u.from.stripe * p.n_initial() + u.from.block;
    for (std::size_t r = 0; r < p.k_final(); ++r) {
      if (!(emb(r, col) == gf(r, u.position))) return false;
    }
  }
  return true;
}

bool check_plan_soundness(const ConvertibleCode& code) {
  const auto& p = code.params;
  if (code.plan.new_blocks.size() != p.r_final) return false;
  const Matrix emb = embedded_generator(code);
  const Matrix gf = code.generator_final();
  std::set<BlockRef> sources;
  for (std::size_t l = 0; l < p.r_final; ++l) {
    std::vector<Element> acc(p.k_final(), code.field.zero());
    for (const auto& term : code.plan.new_blocks[l]) {
      if (term.from.stripe >= p.lambda || term.from.block >= p.n_initial()) return false;
      if (!(term.coeff.field() == code.field)) return false;
      sources.insert(term.from);
      const std::size_t col = term.from.stripe * p.n_initial() + term.from.block;
      for (std::size_t r = 0; r < p.k_final(); ++r) acc[r] += term.coeff * emb(r, col);
    }
    for (std::size_t r = 0; r < p.k_final(); ++r) {
      if (!(acc[r] == gf(r, p.k_final() + l))) return false;
    }
  }
  return code.plan.read_set == std::vector<BlockRef>(sources.begin(), sources.end());
}

std::size_t min_non_stable_access(const ConvertibleCode& code) {
  const auto& p = code.params;
  if (p.k_initial > kMaxNonStableDataBlocks) {
    too_large("non-stable search with kI = " + std::to_string(p.k_initial));
  }
  const Matrix gi = code.generator_initial();
  const std::size_t k = p.k_initial;
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max() / 4;

  // cost[i][d]: fewest reads + writes in stripe i when d of its data blocks
  // are rewritten instead of kept. The rF final parities are added at the end.
  std::vector<std::vector<std::size_t>> cost(p.lambda, std::vector<std::size_t>(k + 1, inf));
  for (std::size_t i = 0; i < p.lambda; ++i) {
    const Matrix pf_band = code.parity_final.block(i * k, k, 0, p.r_final);
    for (std::size_t d = 0; d <= k; ++d) {
      for_each_combination(k, d, [&](std::span<const std::size_t> dropped) {
        Matrix targets(code.field, k, p.r_final + d);
        for (std::size_t r = 0; r < k; ++r) {
          for (std::size_t c = 0; c < p.r_final; ++c) targets(r, c) = pf_band(r, c);
        }
        for (std::size_t c = 0; c < d; ++c) targets(dropped[c], p.r_final + c) = code.field.one();
        const std::size_t reads = smallest_spanning_subset(gi, targets).best.size();
        cost[i][d] = std::min(cost[i][d], reads + d);
        return true;
      });
    }
  }
  // Cheapest cost over the stripes seen so far, with no data block dropped
  // and with at least one dropped.
  std::size_t best_kept = 0, best_dropped = inf;
  for (std::size_t i = 0; i < p.lambda; ++i) {
    std::size_t next_kept = best_kept + cost[i][0];
    std::size_t next_dropped = best_dropped + cost[i][0];
    for (std::size_t d = 1; d <= k; ++d) {
      next_dropped = std::min(next_dropped, std::min(best_kept, best_dropped) + cost[i][d]);
    }
    best_kept = next_kept;
    best_dropped = next_dropped;
  }
  return best_dropped + p.r_final;
}

}  // namespace convcode
