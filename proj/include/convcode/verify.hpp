#pragma once

// Brute-force oracles. None of them reuse the plan logic of the
// constructions, so they can catch construction bugs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "convcode/constructions.hpp"
#include "convcode/matrix.hpp"

namespace convcode {

/// Exhaustive searches refuse instances above these sizes with
/// Errc::InstanceTooLarge.
inline constexpr std::uint64_t kMaxErasurePatterns = 2'000'000;
inline constexpr std::size_t kMaxStripeSearchColumns = 24;
inline constexpr std::size_t kMaxJointSearchColumns = 16;
inline constexpr std::uint64_t kMaxConstructibleSubsets = 1'000'000;
inline constexpr std::size_t kMaxNonStableDataBlocks = 12;

/// [I | parity].
Matrix systematic_generator(const Matrix& parity);

/// lambda*kI x lambda*nI; column i*nI + j is column j of [I | PI] placed in
/// rows i*kI .. (i+1)*kI - 1.
Matrix embedded_generator(const ConvertibleCode& code);

/// Columns of the final generator that are not carried over unchanged,
/// i.e. the columns the conversion has to create.
Matrix new_final_columns(const ConvertibleCode& code);

/// True iff every k-subset of the columns of g (k x n) is nonsingular.
bool is_mds_by_erasure(const Matrix& g);

/// For each band of pf (pf.rows() / pi.rows() bands of pi.rows() rows), the
/// lexicographically first t-subset of pi's columns whose span holds every
/// column of that band. nullopt when some band has no such subset.
std::optional<std::vector<std::vector<std::size_t>>> block_constructible_witness(const Matrix& pf,
                                                                                   const Matrix& pi,
                                                                                   std::size_t t);

struct ReadSetSearch {
  std::size_t min_reads = 0;
  std::vector<std::size_t> per_stripe;
  std::vector<BlockRef> witness;  // one minimum read set
  std::uint64_t subsets_examined = 0;
};

/// Smallest set of initial blocks whose embedded columns span every new final
/// column. Columns of different stripes live in disjoint rows, so the search
/// runs independently per stripe.
ReadSetSearch min_read_set_search(const ConvertibleCode& code);

/// The same minimum found by enumerating subsets of all lambda*nI embedded
/// columns at once. Only for lambda*nI <= kMaxJointSearchColumns.
ReadSetSearch min_read_set_search_joint(const ConvertibleCode& code);

/// Exactly rF new blocks, every final data position filled by the matching
/// initial data block, at most kI unchanged blocks per stripe.
bool check_stability(const ConvertibleCode& code);

/// Each new block's linear combination of embedded initial columns equals the
/// corresponding final column, and the declared read set is exactly the set
/// of sources.
bool check_plan_soundness(const ConvertibleCode& code);

/// Least access cost (reads + writes) over conversions that keep fewer than
/// lambda*kI blocks unchanged, so that more than rF blocks are written.
std::size_t min_non_stable_access(const ConvertibleCode& code);

}  // namespace convcode
