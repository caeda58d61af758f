#include "convcode/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <limits>
#include <set>

#include "convcode/error.hpp"
#include "json.hpp"

namespace convcode {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::Format, "manifest: " + what); }

bool small_field(const Field& f) {
  return f.order() - 1 <= mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max()));
}

json element_json(const Element& e, bool small) {
  if (small) return e.to_u64();
  return e.to_integer().get_str();
}

Element element_from(const json& j, const Field& f) {
  if (j.is_number_unsigned()) return f.from_u64(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad("bad element '" + s + "'");
    return f.from_integer(mpz_class(s));
  }
  bad("field element must be a non-negative integer or decimal string");
}

json matrix_json(const Matrix& m, bool small) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(element_json(m(r, c), small));
  }
  return out;
}

Matrix matrix_from(const json& j, const Field& f, std::size_t rows, std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows * cols) {
    bad(std::string(name) + " must hold " + std::to_string(rows * cols) + " entries");
  }
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < j.size(); ++i) m(i / cols, i % cols) = element_from(j[i], f);
  return m;
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing '") + key + "'");
  return obj.at(key);
}

template <class T>
T number(const json& obj, const char* key) {
  const json& v = member(obj, key);
  if (!v.is_number_unsigned()) bad(std::string("'") + key + "' must be a non-negative integer");
  const auto raw = v.get<std::uint64_t>();
  if (raw > std::numeric_limits<T>::max()) bad(std::string("'") + key + "' out of range");
  return static_cast<T>(raw);
}

json block_ref_json(const BlockRef& r) { return json{{"block", r.block}, {"stripe", r.stripe}}; }

BlockRef block_ref_from(const json& j, const MergeParams& p) {
  BlockRef r{number<std::size_t>(j, "stripe"), number<std::size_t>(j, "block")};
  if (r.stripe >= p.lambda || r.block >= p.n_initial()) bad("block reference outside the initial stripes");
  return r;
}

}  // namespace

std::string to_manifest(const ConvertibleCode& code) {
  const bool small = small_field(code.field);
  const auto& p = code.params;
  json j;
  j["formatVersion"] = kFormatVersion;
  j["scheme"] = std::string(scheme_name(code.scheme));
  if (code.scheme == Scheme::HankelFamily) j["s"] = code.s;
  j["params"] = {{"kI", p.k_initial}, {"lambda", p.lambda}, {"rF", p.r_final}, {"rI", p.r_initial}};
  j["field"] = {{"p", code.field.characteristic()}, {"m", code.field.degree()}, {"modulus", code.field.modulus()}};
  j["parityInitial"] = matrix_json(code.parity_initial, small);
  j["parityFinal"] = matrix_json(code.parity_final, small);
  if (code.hankel) {
    json b = json::array();
    for (const auto& e : code.hankel->values()) b.push_back(element_json(e, small));
    j["hankel"] = {{"b", b}, {"columns", code.hankel_columns}};
  }
  if (code.theta) j["theta"] = element_json(*code.theta, small);

  json blocks = json::array();
  for (const auto& nb : code.plan.new_blocks) {
    json terms = json::array();
    for (const auto& t : nb) {
      json term = block_ref_json(t.from);
      term["coeff"] = element_json(t.coeff, small);
      terms.push_back(term);
    }
    blocks.push_back(terms);
  }
  json reads = json::array();
  for (const auto& r : code.plan.read_set) reads.push_back(block_ref_json(r));
  json unchanged = json::array();
  for (const auto& u : code.plan.unchanged) {
    json e = block_ref_json(u.from);
    e["position"] = u.position;
    unchanged.push_back(e);
  }
  j["plan"] = {{"newBlocks", blocks}, {"readSet", reads}, {"unchanged", unchanged}};
  if (!code.selection.empty()) j["selection"] = code.selection;
  return j.dump();
}

ConvertibleCode from_manifest(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("not valid JSON (") + e.what() + ")");
  }
  if (!j.is_object()) bad("top level must be an object");
  if (number<int>(j, "formatVersion") != kFormatVersion) bad("unsupported formatVersion");

  ConvertibleCode c;
  try {
    const json& scheme = member(j, "scheme");
    if (!scheme.is_string()) bad("'scheme' must be a string");
    c.scheme = parse_scheme(scheme.get<std::string>());
  } catch (const Error& e) {
    if (e.code() == Errc::Format) throw;
    bad(e.what());
  }
  if (c.scheme == Scheme::HankelFamily) c.s = number<unsigned>(j, "s");

  const json& params = member(j, "params");
  c.params = {number<unsigned>(params, "lambda"), number<unsigned>(params, "kI"),
              number<unsigned>(params, "rI"), number<unsigned>(params, "rF")};
  const auto& p = c.params;
  try {
    p.validate();
  } catch (const Error& e) {
    bad(e.what());
  }

  const json& field = member(j, "field");
  const json& modulus = member(field, "modulus");
  std::vector<std::uint32_t> mod;
  if (!modulus.is_array()) bad("'modulus' must be an array");
  for (const auto& v : modulus) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
      bad("modulus coefficients must be non-negative integers");
    }
    mod.push_back(v.get<std::uint32_t>());
  }
  try {
    c.field = Field::make(number<std::uint32_t>(field, "p"), number<unsigned>(field, "m"), mod);
  } catch (const Error& e) {
    if (e.code() == Errc::Format) throw;
    bad(std::string("invalid field: ") + e.what());
  }
  const Field& f = c.field;

  c.parity_initial = matrix_from(member(j, "parityInitial"), f, p.k_initial, p.r_initial, "parityInitial");
  c.parity_final = matrix_from(member(j, "parityFinal"), f, p.k_final(), p.r_final, "parityFinal");

  if (j.contains("hankel")) {
    const json& h = j.at("hankel");
    const json& b = member(h, "b");
    if (!b.is_array()) bad("'hankel.b' must be an array");
    std::vector<Element> values;
    for (const auto& v : b) values.push_back(element_from(v, f));
    c.hankel = HankelArray(f, std::move(values));
    const json& cols = member(h, "columns");
    if (!cols.is_array()) bad("'hankel.columns' must be an array");
    for (const auto& v : cols) {
      if (!v.is_number_unsigned()) bad("'hankel.columns' must hold non-negative integers");
      c.hankel_columns.push_back(v.get<std::size_t>());
    }
  }
  if (j.contains("theta")) c.theta = element_from(j.at("theta"), f);

  const json& plan = member(j, "plan");
  const json& blocks = member(plan, "newBlocks");
  if (!blocks.is_array() || blocks.size() != p.r_final) bad("'plan.newBlocks' must list rF blocks");
  for (const auto& nb : blocks) {
    if (!nb.is_array()) bad("each new block must be a list of terms");
    std::vector<SourceTerm> terms;
    for (const auto& t : nb) terms.push_back({block_ref_from(t, p), element_from(member(t, "coeff"), f)});
    c.plan.new_blocks.push_back(std::move(terms));
  }
  std::set<BlockRef> derived;
  for (const auto& nb : c.plan.new_blocks) {
    for (const auto& t : nb) derived.insert(t.from);
  }
  const json& reads = member(plan, "readSet");
  if (!reads.is_array()) bad("'plan.readSet' must be an array");
  for (const auto& r : reads) c.plan.read_set.push_back(block_ref_from(r, p));
  if (c.plan.read_set != std::vector<BlockRef>(derived.begin(), derived.end())) {
    bad("'plan.readSet' does not match the blocks the plan reads");
  }
  const json& unchanged = member(plan, "unchanged");
  if (!unchanged.is_array()) bad("'plan.unchanged' must be an array");
  std::set<std::size_t> positions;
  for (const auto& u : unchanged) {
    UnchangedBlock ub{block_ref_from(u, p), number<std::size_t>(u, "position")};
    if (ub.from.block >= p.k_initial) bad("only data blocks can be carried over unchanged");
    if (ub.position >= p.k_final() || !positions.insert(ub.position).second) {
      bad("unchanged positions must be distinct data positions of the final stripe");
    }
    c.plan.unchanged.push_back(ub);
  }
  if (c.plan.unchanged.size() != p.k_final()) bad("'plan.unchanged' must cover every final data position");

  if (j.contains("selection")) {
    const json& sel = j.at("selection");
    if (!sel.is_array()) bad("'selection' must be an array");
    for (const auto& s : sel) {
      if (!s.is_string()) bad("'selection' must hold strings");
      c.selection.push_back(s.get<std::string>());
    }
  }
  return c;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::Io, "SHA-256 failed");
  }
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

std::string manifest_hash(const ConvertibleCode& code) { return sha256_hex(to_manifest(code)); }

}  // namespace convcode
