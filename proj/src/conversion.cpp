#include "convcode/conversion.hpp"

#include <algorithm>
#include <random>

#include "convcode/bounds.hpp"
#include "convcode/error.hpp"
#include "convcode/manifest.hpp"

namespace convcode {

namespace {

// acc += coeff * x, elementwise.
void axpy(Payload& acc, const Element& coeff, const Payload& x) {
  if (coeff.is_zero()) return;
  if (coeff.is_one()) {
    for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += x[b];
    return;
  }
  for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += coeff * x[b];
}

Payload row_payload(const Matrix& m, std::size_t r) {
  Payload out;
  out.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

void check_message(const MessageBuffer& msg, const ConvertibleCode& code) {
  if (msg.rows() != code.params.k_final()) {
    throw Error(Errc::DimensionMismatch, "message has " + std::to_string(msg.rows()) + " rows, code needs " +
                                             std::to_string(code.params.k_final()));
  }
  if (msg.rows() > 0 && !(msg.field() == code.field)) {
    throw Error(Errc::FieldMismatch, "message is not over " + code.field.describe());
  }
}

std::size_t check_inputs(std::span<const Stripe> stripes, const ConvertibleCode& code, const std::string& ref) {
  const auto& p = code.params;
  if (stripes.size() != p.lambda) {
    throw Error(Errc::CodeMismatch, "expected " + std::to_string(p.lambda) + " initial stripes, got " +
                                        std::to_string(stripes.size()));
  }
  const std::size_t block_length = stripes.front().block_length;
  for (const auto& s : stripes) {
    if (s.n != p.n_initial() || s.k != p.k_initial || s.blocks.size() != s.n) {
      throw Error(Errc::CodeMismatch, "stripe shape does not match the initial code");
    }
    if (s.block_length != block_length) throw Error(Errc::CodeMismatch, "stripes differ in block length");
    if (!s.code_ref.empty() && s.code_ref != ref) {
      throw Error(Errc::CodeMismatch, "stripe was encoded under a different code");
    }
  }
  return block_length;
}

const Payload& fetch(std::span<const Stripe> stripes, const BlockRef& ref) {
  const Stripe& s = stripes[ref.stripe];
  if (!s.has(ref.block)) {
    throw Error(Errc::MissingBlock, "block " + std::to_string(ref.block) + " of stripe " +
                                        std::to_string(ref.stripe) + " is not available");
  }
  return *s.blocks[ref.block];
}

Stripe empty_final(const ConvertibleCode& code, std::size_t block_length, const std::string& ref) {
  Stripe out;
  out.n = code.params.n_final();
  out.k = code.params.k_final();
  out.block_length = block_length;
  out.blocks.resize(out.n);
  out.code_ref = ref;
  out.role = StripeRole::Final;
  return out;
}

void place_unchanged(Stripe& out, std::span<const Stripe> stripes, const ConvertibleCode& code) {
  for (const auto& u : code.plan.unchanged) out.blocks[u.position] = fetch(stripes, u.from);
}

AccessCostReport make_report(const MergeParams& p, std::vector<std::size_t> per_stripe, std::size_t writes) {
  AccessCostReport r;
  r.reads_per_stripe = std::move(per_stripe);
  for (auto v : r.reads_per_stripe) r.reads += v;
  r.writes = writes;
  r.total_access = r.reads + r.writes;
  r.unchanged = max_unchanged(p);
  r.lower_bound = access_lower_bound(p);
  r.access_optimal = is_access_optimal(r, p);
  r.baseline_access = baseline_access(p);
  return r;
}

}  // namespace

const Payload& Stripe::payload(std::size_t block) const {
  if (!has(block)) throw Error(Errc::MissingBlock, "block " + std::to_string(block) + " is not available");
  return *blocks[block];
}

MessageBuffer random_message(const ConvertibleCode& code, std::size_t block_length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MessageBuffer msg(code.field, code.params.k_final(), block_length);
  for (std::size_t r = 0; r < msg.rows(); ++r) {
    for (std::size_t c = 0; c < block_length; ++c) msg(r, c) = code.field.random(rng);
  }
  return msg;
}

bool is_access_optimal(const AccessCostReport& report, const MergeParams& p) {
  return report.total_access == access_lower_bound(p);
}

Stripe encode_systematic(const Matrix& parity, const Matrix& data) {
  if (parity.rows() != data.rows()) {
    throw Error(Errc::DimensionMismatch, "data rows do not match the parity matrix");
  }
  Stripe s;
  s.k = data.rows();
  s.n = s.k + parity.cols();
  s.block_length = data.cols();
  s.blocks.reserve(s.n);
  for (std::size_t t = 0; t < s.k; ++t) s.blocks.emplace_back(row_payload(data, t));
  for (std::size_t j = 0; j < parity.cols(); ++j) {
    Payload acc(s.block_length, parity.field().zero());
    for (std::size_t t = 0; t < s.k; ++t) axpy(acc, parity(t, j), *s.blocks[t]);
    s.blocks.emplace_back(std::move(acc));
  }
  return s;
}

std::vector<Stripe> encode_initial(const MessageBuffer& msg, const ConvertibleCode& code) {
  check_message(msg, code);
  const std::string ref = manifest_hash(code);
  const std::size_t k = code.params.k_initial;
  std::vector<Stripe> out;
  for (std::size_t g = 0; g < code.params.lambda; ++g) {
    Stripe s = encode_systematic(code.parity_initial, msg.block(g * k, k, 0, msg.cols()));
    s.code_ref = ref;
    s.index = g;
    out.push_back(std::move(s));
  }
  return out;
}

Stripe encode_final(const MessageBuffer& msg, const ConvertibleCode& code) {
  check_message(msg, code);
  Stripe s = encode_systematic(code.parity_final, msg);
  s.code_ref = manifest_hash(code);
  s.role = StripeRole::Final;
  return s;
}

ConversionResult convert(std::span<const Stripe> stripes, const ConvertibleCode& code) {
  const std::string ref = manifest_hash(code);
  const std::size_t block_length = check_inputs(stripes, code, ref);
  const auto& p = code.params;

  ConversionResult result{empty_final(code, block_length, ref), {}};
  place_unchanged(result.final_stripe, stripes, code);
  for (std::size_t l = 0; l < p.r_final; ++l) {
    Payload acc(block_length, code.field.zero());
    for (const auto& term : code.plan.new_blocks[l]) axpy(acc, term.coeff, fetch(stripes, term.from));
    result.final_stripe.blocks[p.k_final() + l] = std::move(acc);
  }
  result.report = make_report(p, code.plan.reads_per_stripe(p.lambda), p.r_final);
  return result;
}

ConversionResult reencode_baseline(std::span<const Stripe> stripes, const ConvertibleCode& code) {
  const std::string ref = manifest_hash(code);
  const std::size_t block_length = check_inputs(stripes, code, ref);
  const auto& p = code.params;

  ConversionResult result{empty_final(code, block_length, ref), {}};
  place_unchanged(result.final_stripe, stripes, code);
  for (std::size_t l = 0; l < p.r_final; ++l) {
    Payload acc(block_length, code.field.zero());
    for (std::size_t row = 0; row < p.k_final(); ++row) {
      axpy(acc, code.parity_final(row, l), fetch(stripes, {row / p.k_initial, row % p.k_initial}));
    }
    result.final_stripe.blocks[p.k_final() + l] = std::move(acc);
  }
  result.report = make_report(p, std::vector<std::size_t>(p.lambda, p.k_initial), p.r_final);
  return result;
}

Decoder::Decoder(Matrix generator) : generator_(std::move(generator)) {}

const Matrix& Decoder::inverse_for(const std::vector<std::size_t>& cols) {
  auto it = cache_.find(cols);
  if (it != cache_.end()) return it->second;
  std::vector<std::size_t> rows(generator_.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  try {
    return cache_.emplace(cols, inverse(generator_.submatrix(rows, cols))).first->second;
  } catch (const Error& e) {
    if (e.code() != Errc::SingularMatrix) throw;
    throw Error(Errc::SingularSubmatrix, "generator columns chosen for decoding are dependent");
  }
}

Matrix Decoder::decode(const Stripe& stripe, std::span<const std::size_t> available) {
  const std::size_t k = generator_.rows();
  if (stripe.n != generator_.cols() || stripe.k != k) {
    throw Error(Errc::CodeMismatch, "stripe shape does not match the generator");
  }
  std::vector<std::size_t> cols(available.begin(), available.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  if (!cols.empty() && cols.back() >= stripe.n) {
    throw Error(Errc::DimensionMismatch, "block index " + std::to_string(cols.back()) + " outside the stripe");
  }
  if (cols.size() < k) {
    throw Error(Errc::TooFewBlocks, "need " + std::to_string(k) + " blocks, have " + std::to_string(cols.size()));
  }
  cols.resize(k);
  for (auto c : cols) stripe.payload(c);

  const Matrix& inv = inverse_for(cols);
  // Codeword symbol j is sum_t m_t G[t][j], so m = c_S * inv(G_S).
  Matrix out(generator_.field(), k, stripe.block_length);
  for (std::size_t t = 0; t < k; ++t) {
    Payload acc(stripe.block_length, generator_.field().zero());
    for (std::size_t u = 0; u < k; ++u) axpy(acc, inv(u, t), *stripe.blocks[cols[u]]);
    for (std::size_t b = 0; b < stripe.block_length; ++b) out(t, b) = acc[b];
  }
  return out;
}

Matrix decode(const Matrix& generator, const Stripe& stripe, std::span<const std::size_t> available) {
  Decoder d(generator);
  return d.decode(stripe, available);
}

bool verify_conversion(const MessageBuffer& msg, const Stripe& final_stripe, const ConvertibleCode& code) {
  if (msg.rows() != code.params.k_final() || final_stripe.n != code.params.n_final() ||
      final_stripe.blocks.size() != final_stripe.n || final_stripe.block_length != msg.cols()) {
    return false;
  }
  const Stripe expected = encode_systematic(code.parity_final, msg);
  for (std::size_t j = 0; j < expected.n; ++j) {
    if (!final_stripe.has(j)) return false;
    const Payload& got = *final_stripe.blocks[j];
    const Payload& want = *expected.blocks[j];
    if (got.size() != want.size()) return false;
    for (std::size_t b = 0; b < want.size(); ++b) {
      if (!(got[b] == want[b])) return false;
    }
  }
  return true;
}

}  // namespace convcode
