#pragma once

// Stripes, systematic encoding and decoding, and execution of merge
// conversions with access accounting.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convcode/constructions.hpp"
#include "convcode/matrix.hpp"

namespace convcode {

using Payload = std::vector<Element>;

enum class StripeRole { Initial, Final };

/// n blocks of B symbols. Blocks 0..k-1 hold data. A block that is missing
/// (erased, or not supplied) is std::nullopt.
struct Stripe {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t block_length = 0;
  std::vector<std::optional<Payload>> blocks;
  std::string code_ref;  // manifest hash of the code that produced it
  StripeRole role = StripeRole::Initial;
  std::size_t index = 0;  // position among the initial stripes

  bool has(std::size_t block) const { return block < blocks.size() && blocks[block].has_value(); }
  const Payload& payload(std::size_t block) const;
};

/// lambda*kI rows of B symbols; row g*kI + t is data block t of initial stripe g.
using MessageBuffer = Matrix;

MessageBuffer random_message(const ConvertibleCode& code, std::size_t block_length, std::uint64_t seed);

struct AccessCostReport {
  std::vector<std::size_t> reads_per_stripe;
  std::size_t reads = 0;
  std::size_t writes = 0;
  std::size_t total_access = 0;
  std::size_t unchanged = 0;
  std::size_t lower_bound = 0;
  bool access_optimal = false;
  std::size_t baseline_access = 0;
};

bool is_access_optimal(const AccessCostReport& report, const MergeParams& p);

/// Systematic encoding of k data rows under [I | parity].
Stripe encode_systematic(const Matrix& parity, const Matrix& data);

std::vector<Stripe> encode_initial(const MessageBuffer& msg, const ConvertibleCode& code);
Stripe encode_final(const MessageBuffer& msg, const ConvertibleCode& code);

struct ConversionResult {
  Stripe final_stripe;
  AccessCostReport report;
};

/// Executes the plan: unchanged blocks are carried over, the rF new parities
/// are the plan's linear combinations. Only blocks in the read set (and the
/// unchanged data blocks) need to be present.
ConversionResult convert(std::span<const Stripe> stripes, const ConvertibleCode& code);

/// Reads every data block and re-encodes the final parities from scratch.
ConversionResult reencode_baseline(std::span<const Stripe> stripes, const ConvertibleCode& code);

/// Recovers the k data rows from the blocks listed in `available` (the first
/// k of them are used). Inverses are cached per block set, so one Decoder
/// should be reused across stripes of the same code.
class Decoder {
 public:
  explicit Decoder(Matrix generator);

  Matrix decode(const Stripe& stripe, std::span<const std::size_t> available);

 private:
  const Matrix& inverse_for(const std::vector<std::size_t>& cols);

  Matrix generator_;
  std::map<std::vector<std::size_t>, Matrix> cache_;
};

Matrix decode(const Matrix& generator, const Stripe& stripe, std::span<const std::size_t> available);

/// Whether `final_stripe` is exactly the final-code encoding of msg.
bool verify_conversion(const MessageBuffer& msg, const Stripe& final_stripe, const ConvertibleCode& code);

}  // namespace convcode
