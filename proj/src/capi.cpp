#include "convcode/convcode.h"

#include <cstring>
#include <filesystem>
#include <new>
#include <string>
#include <utility>

#include "convcode/bounds.hpp"
#include "convcode/constructions.hpp"
#include "convcode/conversion.hpp"
#include "convcode/error.hpp"
#include "convcode/manifest.hpp"
#include "convcode/store.hpp"
#include "convcode/verify.hpp"
#include "json.hpp"

struct cc_code {
  convcode::ConvertibleCode code;
  std::string hash;
};

namespace {

using namespace convcode;
namespace fs = std::filesystem;

// Largest superregularity check verify will run.
constexpr std::uint64_t kMaxVerifyMinors = 20'000'000;

thread_local std::string last_error;

cc_status status_for(Errc code) {
  switch (code) {
    case Errc::NotPrime:
    case Errc::NotIrreducible:
    case Errc::DegreeMismatch:
    case Errc::InvalidParams: return CC_E_INVALID_PARAMS;
    case Errc::PreconditionViolated:
    case Errc::DimensionMismatch: return CC_E_PRECONDITION;
    case Errc::SizeExceedsField: return CC_E_SIZE_EXCEEDS_FIELD;
    case Errc::NotRestrictable: return CC_E_NOT_RESTRICTABLE;
    case Errc::MissingBlock: return CC_E_MISSING_BLOCK;
    case Errc::CodeMismatch:
    case Errc::FieldMismatch: return CC_E_CODE_MISMATCH;
    case Errc::TooFewBlocks: return CC_E_TOO_FEW_BLOCKS;
    case Errc::SingularMatrix:
    case Errc::SingularSubmatrix: return CC_E_SINGULAR;
    case Errc::InstanceTooLarge: return CC_E_INSTANCE_TOO_LARGE;
    case Errc::Io: return CC_E_IO;
    case Errc::Format: return CC_E_FORMAT;
    default: return CC_E_INTERNAL;
  }
}

template <class F>
cc_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return CC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CC_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CC_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::InvalidParams, what);
}

cc_status argument_error(const char* what) {
  last_error = what;
  return CC_E_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <std::size_t N>
void copy_into(char (&dst)[N], const std::string& src) {
  const std::size_t n = std::min(src.size(), N - 1);
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

MergeParams to_params(const cc_params& p) { return {p.lambda, p.k_initial, p.r_initial, p.r_final}; }

cc_code* wrap(ConvertibleCode code) {
  auto* out = new cc_code{std::move(code), {}};
  out->hash = manifest_hash(out->code);
  return out;
}

std::string report_json(const AccessCostReport& r) {
  nlohmann::json j = {{"accessOptimal", r.access_optimal}, {"baselineAccess", r.baseline_access},
                      {"lowerBound", r.lower_bound},       {"reads", r.reads},
                      {"readsPerStripe", r.reads_per_stripe}, {"totalAccess", r.total_access},
                      {"writes", r.writes}};
  return j.dump();
}

void write_initial_stripes(const cc_code& c, const MessageBuffer& msg, const fs::path& out) {
  const auto stripes = encode_initial(msg, c.code);
  for (std::size_t i = 0; i < stripes.size(); ++i) {
    write_stripe_store(out / initial_stripe_dir(i), stripes[i], c.code.field);
  }
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

struct Checks {
  std::vector<cc_check_result> results;

  void add(const std::string& name, cc_verdict verdict, const std::string& detail) {
    cc_check_result r{};
    copy_into(r.name, name);
    r.verdict = verdict;
    copy_into(r.detail, detail);
    results.push_back(r);
  }

  // Runs body, which returns (passed, detail); a search refused as too large
  // is reported as skipped.
  template <class F>
  void run(const std::string& name, F&& body) {
    try {
      auto [ok, detail] = body();
      add(name, ok ? CC_PASS : CC_FAIL, detail);
    } catch (const Error& e) {
      if (e.code() != Errc::InstanceTooLarge) throw;
      add(name, CC_SKIPPED, e.what());
    }
  }
};

void superregular_check(Checks& checks, const std::string& name, const Matrix& m) {
  checks.run(name, [&]() -> std::pair<bool, std::string> {
    if (square_minor_count(m.rows(), m.cols()) > kMaxVerifyMinors) {
      throw Error(Errc::InstanceTooLarge, std::to_string(square_minor_count(m.rows(), m.cols())) + " minors");
    }
    const auto report = check_superregular(m);
    std::string detail = std::to_string(report.minors_checked) + " minors checked";
    if (report.witness) detail += ", singular minor rows " + join(report.witness->rows) + " cols " +
                                  join(report.witness->cols);
    return {report.superregular, detail};
  });
}

}  // namespace

extern "C" {

const char* cc_last_error(void) { return last_error.c_str(); }

const char* cc_status_name(cc_status status) {
  switch (status) {
    case CC_OK: return "ok";
    case CC_E_ARGUMENT: return "invalid argument";
    case CC_E_INVALID_PARAMS: return "invalid parameters";
    case CC_E_PRECONDITION: return "precondition violated";
    case CC_E_SIZE_EXCEEDS_FIELD: return "field too small";
    case CC_E_NOT_RESTRICTABLE: return "not restrictable";
    case CC_E_MISSING_BLOCK: return "missing block";
    case CC_E_CODE_MISMATCH: return "code mismatch";
    case CC_E_TOO_FEW_BLOCKS: return "too few blocks";
    case CC_E_SINGULAR: return "singular matrix";
    case CC_E_INSTANCE_TOO_LARGE: return "instance too large";
    case CC_E_IO: return "I/O error";
    case CC_E_FORMAT: return "format error";
    case CC_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void cc_string_free(char* s) { delete[] s; }

cc_status cc_construct(const cc_params* params, const cc_construct_options* options, cc_code** out) {
  if (!params || !out) return argument_error("params and out must not be null");
  *out = nullptr;
  return guarded([&] {
    const MergeParams p = to_params(*params);
    ConstructOptions opts;
    std::string scheme = "auto";
    if (options) {
      if (options->scheme) scheme = options->scheme;
      opts.s = options->s;
      if (options->characteristic) opts.characteristic = options->characteristic;
      if (options->field_order) {
        mpz_class q;
        require(q.set_str(options->field_order, 10) == 0 && q > 1, "field order must be a decimal integer > 1");
        opts.field = Field::with_order(q);
      }
    }
    ConvertibleCode code = scheme == "auto" ? construct_auto(p, opts) : construct(parse_scheme(scheme), p, opts);
    *out = wrap(std::move(code));
  });
}

cc_status cc_restrict(const cc_code* code, unsigned lambda, unsigned r_final, cc_code** out) {
  if (!code || !out) return argument_error("code and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = wrap(restrict_code(code->code, lambda, r_final)); });
}

cc_status cc_manifest_parse(const char* text, size_t length, cc_code** out) {
  if (!text || !out) return argument_error("text and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = wrap(from_manifest(std::string_view(text, length))); });
}

cc_status cc_manifest_load(const char* path, cc_code** out) {
  if (!path || !out) return argument_error("path and out must not be null");
  *out = nullptr;
  return guarded([&] {
    const auto bytes = read_file(path);
    *out = wrap(from_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size())));
  });
}

cc_status cc_manifest_save(const cc_code* code, const char* path) {
  if (!code || !path) return argument_error("code and path must not be null");
  return guarded([&] { write_file(path, to_manifest(code->code)); });
}

cc_status cc_manifest_text(const cc_code* code, char** out) {
  if (!code || !out) return argument_error("code and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = dup_string(to_manifest(code->code)); });
}

void cc_code_free(cc_code* code) { delete code; }

cc_status cc_code_get_info(const cc_code* code, cc_code_info* out) {
  if (!code || !out) return argument_error("code and out must not be null");
  return guarded([&] {
    const auto& c = code->code;
    *out = cc_code_info{};
    out->params = {c.params.lambda, c.params.k_initial, c.params.r_initial, c.params.r_final};
    copy_into(out->scheme, std::string(scheme_name(c.scheme)));
    out->s = c.s;
    copy_into(out->field, c.field.describe());
    copy_into(out->field_order, c.field.order().get_str());
    out->symbol_bytes = c.field.symbol_bytes();
    out->reads = c.plan.read_set.size();
    copy_into(out->hash, code->hash);
  });
}

cc_status cc_code_selection(const cc_code* code, char** out) {
  if (!code || !out) return argument_error("code and out must not be null");
  *out = nullptr;
  return guarded([&] {
    std::string text;
    for (const auto& line : code->code.selection) text += line + "\n";
    *out = dup_string(text);
  });
}

cc_status cc_bounds_compute(const cc_params* params, cc_bounds* out) {
  if (!params || !out) return argument_error("params and out must not be null");
  return guarded([&] {
    const MergeParams p = to_params(*params);
    p.validate();
    *out = {access_lower_bound(p), read_lower_bound_per_stripe(p), max_unchanged(p), baseline_access(p)};
  });
}

cc_status cc_encode_file(const cc_code* code, const char* input_path, const char* out_dir) {
  if (!code || !input_path || !out_dir) return argument_error("code, input and out_dir must not be null");
  return guarded([&] {
    const MessageBuffer msg = read_message_file(input_path, code->code.field, code->code.params.k_final());
    write_initial_stripes(*code, msg, out_dir);
  });
}

cc_status cc_encode_random(const cc_code* code, size_t block_length, uint64_t seed, const char* out_dir) {
  if (!code || !out_dir) return argument_error("code and out_dir must not be null");
  if (block_length == 0) return argument_error("block length must be positive");
  return guarded([&] {
    const MessageBuffer msg = random_message(code->code, block_length, seed);
    write_initial_stripes(*code, msg, out_dir);
    write_message_file(fs::path(out_dir) / "message.bin", msg);
  });
}

cc_status cc_convert_store(const cc_code* code, const char* stripes_dir, const char* out_dir, int baseline,
                           char** report) {
  if (!code || !stripes_dir || !out_dir) return argument_error("code, stripes_dir and out_dir must not be null");
  if (report) *report = nullptr;
  return guarded([&] {
    const auto& c = code->code;
    std::vector<Stripe> stripes;
    for (std::size_t i = 0; i < c.params.lambda; ++i) {
      const fs::path dir = fs::path(stripes_dir) / initial_stripe_dir(i);
      Stripe s = read_stripe_store(dir, c.field);
      if (s.role != StripeRole::Initial || s.index != i) {
        throw Error(Errc::CodeMismatch, dir.string() + " does not hold initial stripe " + std::to_string(i));
      }
      stripes.push_back(std::move(s));
    }
    const ConversionResult result = baseline ? reencode_baseline(stripes, c) : convert(stripes, c);
    write_stripe_store(out_dir, result.final_stripe, c.field);
    if (report) *report = dup_string(report_json(result.report));
  });
}

cc_status cc_decode_store(const cc_code* code, const char* stripe_dir, const size_t* erase, size_t erase_count,
                          const char* out_path) {
  if (!code || !stripe_dir || !out_path || (erase_count && !erase)) {
    return argument_error("code, stripe_dir and out_path must not be null");
  }
  return guarded([&] {
    const auto& c = code->code;
    Stripe s = read_stripe_store(stripe_dir, c.field);
    if (s.code_ref != code->hash) throw Error(Errc::CodeMismatch, "stripe was encoded under a different code");
    for (size_t i = 0; i < erase_count; ++i) {
      if (erase[i] >= s.n) {
        throw Error(Errc::PreconditionViolated, "erased block " + std::to_string(erase[i]) + " outside the stripe");
      }
      s.blocks[erase[i]].reset();
    }
    std::vector<std::size_t> available;
    for (std::size_t j = 0; j < s.n; ++j) {
      if (s.has(j)) available.push_back(j);
    }
    const Matrix g = s.role == StripeRole::Initial ? c.generator_initial() : c.generator_final();
    write_message_file(out_path, decode(g, s, available));
  });
}

cc_status cc_verify(const cc_code* code, unsigned checks, cc_check_result* results, size_t capacity,
                    size_t* count) {
  if (!code || !count || (capacity && !results)) return argument_error("code and count must not be null");
  *count = 0;
  return guarded([&] {
    const auto& c = code->code;
    const auto& p = c.params;
    Checks out;
    if (checks & CC_CHECK_PLAN) {
      out.run("stability", [&] { return std::pair{check_stability(c), std::string("new blocks and unchanged map")}; });
      out.run("plan-soundness",
              [&] { return std::pair{check_plan_soundness(c), std::string("plan combinations against final columns")}; });
      out.run("access-optimal", [&] {
        const std::size_t total = c.plan.read_set.size() + p.r_final;
        return std::pair{total == access_lower_bound(p),
                         "plan access " + std::to_string(total) + ", bound " + std::to_string(access_lower_bound(p))};
      });
    }
    if (checks & CC_CHECK_MDS) {
      superregular_check(out, "superregular-initial", c.parity_initial);
      superregular_check(out, "superregular-final", c.parity_final);
      out.run("mds-initial", [&] { return std::pair{is_mds_by_erasure(c.generator_initial()), std::string("all erasure patterns")}; });
      out.run("mds-final", [&] { return std::pair{is_mds_by_erasure(c.generator_final()), std::string("all erasure patterns")}; });
    }
    if (checks & CC_CHECK_CONSTRUCTIBLE) {
      if (c.scheme == Scheme::Trivial) {
        out.add("block-constructible", CC_SKIPPED, "trivial codes rebuild parities from data blocks");
      } else {
        out.run("block-constructible", [&]() -> std::pair<bool, std::string> {
          const auto w = block_constructible_witness(c.parity_final, c.parity_initial, p.r_final);
          if (!w) return {false, "no " + std::to_string(p.r_final) + "-column witness"};
          std::string detail = "t=" + std::to_string(p.r_final) + ", columns per stripe";
          for (const auto& cols : *w) detail += " " + join(cols);
          return {true, detail};
        });
      }
    }
    if (checks & CC_CHECK_MIN_READS) {
      out.run("min-read-set", [&]() -> std::pair<bool, std::string> {
        const auto search = min_read_set_search(c);
        const std::size_t bound = p.lambda * read_lower_bound_per_stripe(p);
        const bool ok = c.scheme == Scheme::Trivial ? search.min_reads >= bound : search.min_reads == bound;
        return {ok, "minimum " + std::to_string(search.min_reads) + " " + join(search.per_stripe) + ", bound " +
                        std::to_string(bound)};
      });
      out.run("non-stable-penalty", [&]() -> std::pair<bool, std::string> {
        const std::size_t best = min_non_stable_access(c);
        return {best > access_lower_bound(p), "cheapest non-stable access " + std::to_string(best) + ", bound " +
                                                  std::to_string(access_lower_bound(p))};
      });
    }
    *count = out.results.size();
    for (std::size_t i = 0; i < std::min(capacity, out.results.size()); ++i) results[i] = out.results[i];
  });
}

}  // extern "C"
