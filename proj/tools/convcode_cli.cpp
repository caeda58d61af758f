// convcode: construct convertible codes, encode, convert and decode stripe
// stores, and run the verification oracles.

#include <convcode/convcode.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

int exit_code(cc_status s) {
  switch (s) {
    case CC_OK: return kOk;
    case CC_E_IO:
    case CC_E_FORMAT:
    case CC_E_MISSING_BLOCK: return kIo;
    case CC_E_SINGULAR:
    case CC_E_INTERNAL: return kVerifyFailed;
    default: return kUsage;
  }
}

int fail(cc_status s) {
  std::cerr << "convcode: " << cc_status_name(s) << ": " << cc_last_error() << "\n";
  return exit_code(s);
}

struct CodeHandle {
  cc_code* code = nullptr;
  ~CodeHandle() { cc_code_free(code); }
};

struct OwnedString {
  char* text = nullptr;
  ~OwnedString() { cc_string_free(text); }
};

void add_params(CLI::App* cmd, cc_params& p) {
  cmd->add_option("--lambda", p.lambda, "Number of initial stripes merged")->required();
  cmd->add_option("--ki", p.k_initial, "Data blocks per initial stripe")->required();
  cmd->add_option("--ri", p.r_initial, "Parity blocks per initial stripe")->required();
  cmd->add_option("--rf", p.r_final, "Parity blocks of the final stripe")->required();
}

void print_info(const cc_code* code) {
  cc_code_info info{};
  if (cc_code_get_info(code, &info) != CC_OK) return;
  std::cout << "scheme: " << info.scheme;
  if (info.s) std::cout << " (s=" << info.s << ")";
  std::cout << "\nfield: " << info.field << " (q = " << info.field_order << ")\n";
}

int run_construct(const cc_params& p, const std::string& scheme, unsigned s, unsigned characteristic,
                  const std::string& field_q, const std::string& out) {
  cc_construct_options opts{scheme.c_str(), s, characteristic, field_q.empty() ? nullptr : field_q.c_str()};
  CodeHandle h;
  if (cc_status st = cc_construct(&p, &opts, &h.code); st != CC_OK) return fail(st);
  if (cc_status st = cc_manifest_save(h.code, out.c_str()); st != CC_OK) return fail(st);
  print_info(h.code);
  cc_bounds b{};
  cc_bounds_compute(&p, &b);
  std::cout << "access lower bound: " << b.access_lower_bound << "\n";
  OwnedString sel;
  if (cc_code_selection(h.code, &sel.text) == CC_OK && sel.text && *sel.text) {
    std::cout << "selection:\n" << sel.text;
  }
  return kOk;
}

int run_bounds(const cc_params& p) {
  cc_bounds b{};
  if (cc_status st = cc_bounds_compute(&p, &b); st != CC_OK) return fail(st);
  std::cout << "access lower bound: " << b.access_lower_bound << "\n"
            << "reads per stripe: " << b.read_lower_bound_per_stripe << "\n"
            << "max unchanged: " << b.max_unchanged << "\n"
            << "naive access: " << b.baseline_access << "\n";
  if (b.baseline_access) {
    const double saving = 100.0 * (1.0 - double(b.access_lower_bound) / double(b.baseline_access));
    std::cout << "saving: " << saving << "%\n";
  }
  return kOk;
}

int run_convert(const std::string& code_path, const std::string& stripes, const std::string& out,
                const std::string& report_path, bool baseline) {
  CodeHandle h;
  if (cc_status st = cc_manifest_load(code_path.c_str(), &h.code); st != CC_OK) return fail(st);
  OwnedString report;
  if (cc_status st = cc_convert_store(h.code, stripes.c_str(), out.c_str(), baseline, &report.text); st != CC_OK) {
    return fail(st);
  }
  std::cout << report.text << "\n";
  if (!report_path.empty()) {
    std::ofstream f(report_path, std::ios::trunc);
    f << report.text << "\n";
    if (!f) {
      std::cerr << "convcode: cannot write " << report_path << "\n";
      return kIo;
    }
  }
  return kOk;
}

int run_verify(const std::string& code_path, unsigned checks) {
  CodeHandle h;
  if (cc_status st = cc_manifest_load(code_path.c_str(), &h.code); st != CC_OK) return fail(st);
  std::vector<cc_check_result> results(32);
  std::size_t count = 0;
  if (cc_status st = cc_verify(h.code, checks, results.data(), results.size(), &count); st != CC_OK) {
    return fail(st);
  }
  int rc = kOk;
  for (std::size_t i = 0; i < std::min(count, results.size()); ++i) {
    const auto& r = results[i];
    const char* verdict = r.verdict == CC_PASS ? "pass" : r.verdict == CC_FAIL ? "FAIL" : "skipped";
    std::cout << r.name << ": " << verdict << " (" << r.detail << ")\n";
    if (r.verdict == CC_FAIL) rc = kVerifyFailed;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convertible MDS codes for merging stripes"};
  app.require_subcommand(1);
  int rc = kOk;

  cc_params params{};
  std::string scheme = "auto", field_q, out;
  unsigned s = 0, characteristic = 2;
  auto* construct = app.add_subcommand("construct", "Build a code and write its manifest");
  add_params(construct, params);
  construct->add_option("--scheme", scheme, "auto, general, hankel1, hankel2, hankel-s or trivial")
      ->check(CLI::IsMember({"auto", "general", "hankel1", "hankel2", "hankel-s", "trivial"}));
  construct->add_option("--s", s, "Group count for hankel-s");
  construct->add_option("--char", characteristic, "Field characteristic for general");
  construct->add_option("--field-q", field_q, "Field order");
  construct->add_option("--out", out, "Manifest path")->required();
  construct->callback([&] { rc = run_construct(params, scheme, s, characteristic, field_q, out); });

  auto* bounds = app.add_subcommand("bounds", "Print access-cost lower bounds");
  add_params(bounds, params);
  bounds->callback([&] { rc = run_bounds(params); });

  std::string code_path, input, stripes, report, stripe, erase;
  std::size_t random_b = 0;
  std::uint64_t seed = 0;
  auto* encode = app.add_subcommand("encode", "Encode a message into initial stripes");
  encode->add_option("--code", code_path, "Manifest path")->required();
  auto* input_opt = encode->add_option("--input", input, "Raw message file");
  auto* random_opt = encode->add_option("--random", random_b, "Random message with B symbols per block");
  input_opt->excludes(random_opt);
  encode->add_option("--seed", seed, "Seed for --random");
  encode->add_option("--out", out, "Output directory")->required();
  encode->callback([&] {
    CodeHandle h;
    if (cc_status st = cc_manifest_load(code_path.c_str(), &h.code); st != CC_OK) {
      rc = fail(st);
      return;
    }
    if (input.empty() && random_b == 0) {
      std::cerr << "convcode: encode needs --input or --random\n";
      rc = kUsage;
      return;
    }
    const cc_status st = input.empty() ? cc_encode_random(h.code, random_b, seed, out.c_str())
                                       : cc_encode_file(h.code, input.c_str(), out.c_str());
    rc = st == CC_OK ? kOk : fail(st);
  });

  for (const char* name : {"convert", "reencode"}) {
    const bool baseline = std::string(name) == "reencode";
    auto* cmd = app.add_subcommand(name, baseline ? "Merge by reading every data block and re-encoding"
                                                   : "Merge initial stripes following the code's plan");
    cmd->add_option("--code", code_path, "Manifest path")->required();
    cmd->add_option("--stripes", stripes, "Directory written by encode")->required();
    cmd->add_option("--out", out, "Final stripe directory")->required();
    cmd->add_option("--report", report, "Access report JSON path");
    cmd->callback([&, baseline] { rc = run_convert(code_path, stripes, out, report, baseline); });
  }

  auto* decode = app.add_subcommand("decode", "Recover the data of a stripe store");
  decode->add_option("--code", code_path, "Manifest path")->required();
  decode->add_option("--stripe", stripe, "Stripe directory")->required();
  decode->add_option("--erase", erase, "Comma-separated block indices to drop first");
  decode->add_option("--out", out, "Output message file")->required();
  decode->callback([&] {
    std::vector<std::size_t> erased;
    try {
      for (const auto& tok : CLI::detail::split(erase, ',')) {
        if (!tok.empty()) erased.push_back(std::stoul(tok));
      }
    } catch (const std::exception&) {
      std::cerr << "convcode: --erase expects comma-separated block indices\n";
      rc = kUsage;
      return;
    }
    CodeHandle h;
    cc_status st = cc_manifest_load(code_path.c_str(), &h.code);
    if (st == CC_OK) st = cc_decode_store(h.code, stripe.c_str(), erased.data(), erased.size(), out.c_str());
    rc = st == CC_OK ? kOk : fail(st);
  });

  bool mds = false, constructible = false, min_reads = false, all = false;
  auto* verify = app.add_subcommand("verify", "Check a code against the brute-force oracles");
  verify->add_option("--code", code_path, "Manifest path")->required();
  verify->add_flag("--mds", mds, "Superregularity and exhaustive erasure decoding");
  verify->add_flag("--constructible", constructible, "Block-constructibility witness search");
  verify->add_flag("--min-reads", min_reads, "Exhaustive minimum read set search");
  verify->add_flag("--all", all, "Every check");
  verify->callback([&] {
    unsigned checks = CC_CHECK_PLAN;
    if (mds || all) checks |= CC_CHECK_MDS;
    if (constructible || all) checks |= CC_CHECK_CONSTRUCTIBLE;
    if (min_reads || all) checks |= CC_CHECK_MIN_READS;
    rc = run_verify(code_path, checks);
  });

  unsigned lambda_new = 0, rf_new = 0;
  auto* restrict_cmd = app.add_subcommand("restrict", "Derive a Hankel code for smaller lambda or rF");
  restrict_cmd->add_option("--code", code_path, "Manifest path")->required();
  restrict_cmd->add_option("--lambda", lambda_new, "New lambda")->required();
  restrict_cmd->add_option("--rf", rf_new, "New rF")->required();
  restrict_cmd->add_option("--out", out, "Manifest path")->required();
  restrict_cmd->callback([&] {
    CodeHandle src, dst;
    cc_status st = cc_manifest_load(code_path.c_str(), &src.code);
    if (st == CC_OK) st = cc_restrict(src.code, lambda_new, rf_new, &dst.code);
    if (st == CC_OK) st = cc_manifest_save(dst.code, out.c_str());
    if (st != CC_OK) {
      rc = fail(st);
      return;
    }
    print_info(dst.code);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  return rc;
}
