#pragma once

// Merge-regime convertible codes: lambda initial [kI + rI, kI] stripes are
// merged into one final [lambda*kI + rF, lambda*kI] stripe. Both codes are
// systematic, G = [I | P], so a code is fully described by its two parity
// matrices plus the plan that builds the rF new parities during conversion.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convcode/gf.hpp"
#include "convcode/hankel.hpp"
#include "convcode/matrix.hpp"

namespace convcode {

struct MergeParams {
  unsigned lambda = 2;
  unsigned k_initial = 1;
  unsigned r_initial = 0;
  unsigned r_final = 0;

  unsigned n_initial() const noexcept { return k_initial + r_initial; }
  unsigned k_final() const noexcept { return lambda * k_initial; }
  unsigned n_final() const noexcept { return k_final() + r_final; }

  /// Throws Errc::InvalidParams unless lambda >= 2 and kI >= 1.
  void validate() const;
  std::string to_string() const;

  friend bool operator==(const MergeParams&, const MergeParams&) = default;
};

/// (stripe, block) position in the initial configuration, zero-based.
/// Blocks 0..kI-1 are data, kI..nI-1 are parities.
struct BlockRef {
  std::size_t stripe = 0;
  std::size_t block = 0;
  friend auto operator<=>(const BlockRef&, const BlockRef&) = default;
};

struct SourceTerm {
  BlockRef from;
  Element coeff;
};

struct UnchangedBlock {
  BlockRef from;
  std::size_t position = 0;  // index in the final stripe
};

struct ConversionPlan {
  /// One linear combination per new final parity, in final parity order.
  std::vector<std::vector<SourceTerm>> new_blocks;
  /// Every block read during conversion, sorted, each listed once.
  std::vector<BlockRef> read_set;
  std::vector<UnchangedBlock> unchanged;

  std::vector<std::size_t> reads_per_stripe(std::size_t lambda) const;
};

enum class Scheme { General, Hankel1, Hankel2, HankelFamily, Trivial };

std::string_view scheme_name(Scheme s) noexcept;
/// Accepts the manifest/CLI spellings: general, hankel1, hankel2, hankel-s, trivial.
Scheme parse_scheme(std::string_view name);

struct ConvertibleCode {
  MergeParams params;
  Field field;
  Matrix parity_initial;  // kI x rI
  Matrix parity_final;    // lambda*kI x rF
  ConversionPlan plan;
  Scheme scheme = Scheme::General;
  unsigned s = 0;  // group count, HankelFamily only

  std::optional<HankelArray> hankel;
  /// Array columns (zero-based) holding the columns of parity_initial.
  std::vector<std::size_t> hankel_columns;
  std::optional<Element> theta;  // General only
  /// How the scheme was picked when selection was automatic.
  std::vector<std::string> selection;

  Matrix generator_initial() const;
  Matrix generator_final() const;
};

/// Equality of everything that defines the code: params, field, parity
/// matrices, plan and Hankel provenance. Scheme tag and selection notes are
/// ignored.
bool same_code(const ConvertibleCode& a, const ConvertibleCode& b);

/// Largest degree in theta of any minor of the power-pattern parity matrices:
/// (1/6) max{ rF(rF-1)(3 lambda kI - rF - 1), rI(rI-1)(3kI - rI - 1),
///            kI(kI-1)(3rI - kI - 1) }.
unsigned degree_bound(const MergeParams& p);

/// Entries theta^(i*j) over GF(characteristic^(degree_bound+1)).
/// Requires rF <= min(rI, kI).
ConvertibleCode general_construction(const MergeParams& p, std::uint32_t characteristic = 2);

/// Requires rF <= floor(rI / lambda) and q >= max(nI - 1, nF - 1).
ConvertibleCode hankel1(const MergeParams& p, const Field& field);
/// Requires rF <= rI - lambda + 1 and q >= kI * rI.
ConvertibleCode hankel2(const MergeParams& p, const Field& field);
/// Intermediate points between hankel1 (s = lambda) and hankel2 (s = rI).
ConvertibleCode hankel_family(unsigned s, const MergeParams& p, const Field& field);
/// Independent Cauchy parities, every data block read. Requires q >= max(nI, nF).
ConvertibleCode trivial_construction(const MergeParams& p, const Field& field);

/// Reuses the initial code and Hankel array of a hankel-based code for
/// lambda' = lambda_new and rF' = r_final_new.
ConvertibleCode restrict_code(const ConvertibleCode& code, unsigned lambda_new, unsigned r_final_new);

/// Largest rF the s-group layout supports:
/// (s - lambda + 1) floor(rI/s) + max(rI mod s - lambda + 1, 0).
unsigned hankel_family_max_r_final(unsigned s, const MergeParams& p);

/// Smallest admissible field order for each scheme.
mpz_class hankel1_min_order(const MergeParams& p);
mpz_class hankel2_min_order(const MergeParams& p);
mpz_class hankel_family_min_order(unsigned s, const MergeParams& p);
mpz_class trivial_min_order(const MergeParams& p);

struct ConstructOptions {
  std::optional<Field> field;       // default: smallest admissible
  std::uint32_t characteristic = 2;  // General only
  unsigned s = 0;                    // HankelFamily only
};

ConvertibleCode construct(Scheme scheme, const MergeParams& p, const ConstructOptions& opts = {});

/// Tries hankel1, then hankel-s for increasing s, then hankel2, general and
/// trivial, keeping the first whose preconditions hold. The reasoning is
/// recorded in ConvertibleCode::selection.
ConvertibleCode construct_auto(const MergeParams& p, const ConstructOptions& opts = {});

}  // namespace convcode
