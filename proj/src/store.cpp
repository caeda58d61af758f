#include "convcode/store.hpp"

#include <fstream>
#include <iterator>

#include "convcode/error.hpp"
#include "convcode/manifest.hpp"
#include "json.hpp"

namespace convcode {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void bad(const fs::path& where, const std::string& what) {
  throw Error(Errc::Format, where.string() + ": " + what);
}

json field_json(const Field& f) {
  return {{"m", f.degree()}, {"modulus", f.modulus()}, {"p", f.characteristic()}};
}

std::string block_name(std::size_t j) { return "block-" + std::to_string(j) + ".bin"; }

}  // namespace

std::vector<unsigned char> encode_symbols(const Payload& symbols, const Field& field) {
  const std::size_t w = field.symbol_bytes();
  std::vector<unsigned char> out(symbols.size() * w, 0);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const mpz_class v = symbols[i].to_integer();
    std::size_t count = 0;
    std::vector<unsigned char> tmp(w + 8, 0);
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    std::copy(tmp.begin(), tmp.begin() + count, out.begin() + i * w + (w - count));
  }
  return out;
}

Payload decode_symbols(const std::vector<unsigned char>& bytes, const Field& field) {
  const std::size_t w = field.symbol_bytes();
  if (bytes.size() % w != 0) {
    throw Error(Errc::Format, "byte count is not a multiple of the symbol width " + std::to_string(w));
  }
  Payload out;
  out.reserve(bytes.size() / w);
  for (std::size_t i = 0; i < bytes.size(); i += w) {
    mpz_class v;
    mpz_import(v.get_mpz_t(), w, 1, 1, 1, 0, bytes.data() + i);
    if (v >= field.order()) {
      throw Error(Errc::PreconditionViolated, "symbol at byte " + std::to_string(i) + " has value " + v.get_str() +
                                                   ", not below q = " + field.order().get_str());
    }
    out.push_back(field.from_integer(v));
  }
  return out;
}

std::vector<unsigned char> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::Io, "short write to " + path.string());
}

void write_file(const fs::path& path, const std::string& bytes) {
  write_file(path, std::vector<unsigned char>(bytes.begin(), bytes.end()));
}

std::string initial_stripe_dir(std::size_t i) { return "initial-" + std::to_string(i); }

void write_stripe_store(const fs::path& dir, const Stripe& stripe, const Field& field) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + dir.string() + ": " + ec.message());
  json names = json::array();
  for (std::size_t j = 0; j < stripe.n; ++j) {
    names.push_back(block_name(j));
    if (stripe.has(j)) write_file(dir / block_name(j), encode_symbols(*stripe.blocks[j], field));
  }
  json meta = {{"B", stripe.block_length},
               {"blocks", names},
               {"codeHash", stripe.code_ref},
               {"field", field_json(field)},
               {"formatVersion", kFormatVersion},
               {"k", stripe.k},
               {"n", stripe.n},
               {"role", stripe.role == StripeRole::Initial ? "initial" : "final"},
               {"stripe", stripe.index}};
  // Written last: a store without stripe.json is incomplete.
  write_file(dir / "stripe.json", meta.dump());
}

Stripe read_stripe_store(const fs::path& dir, const Field& field) {
  const fs::path meta_path = dir / "stripe.json";
  const auto raw = read_file(meta_path);
  json meta;
  try {
    meta = json::parse(raw.begin(), raw.end());
  } catch (const json::exception& e) {
    bad(meta_path, std::string("not valid JSON (") + e.what() + ")");
  }
  Stripe s;
  try {
    if (meta.at("formatVersion").get<int>() != kFormatVersion) bad(meta_path, "unsupported formatVersion");
    if (meta.at("field") != field_json(field)) bad(meta_path, "stripe was written for a different field");
    s.n = meta.at("n").get<std::size_t>();
    s.k = meta.at("k").get<std::size_t>();
    s.block_length = meta.at("B").get<std::size_t>();
    s.code_ref = meta.at("codeHash").get<std::string>();
    s.index = meta.at("stripe").get<std::size_t>();
    const auto role = meta.at("role").get<std::string>();
    if (role != "initial" && role != "final") bad(meta_path, "unknown role '" + role + "'");
    s.role = role == "initial" ? StripeRole::Initial : StripeRole::Final;
    const auto names = meta.at("blocks").get<std::vector<std::string>>();
    if (names.size() != s.n || s.k > s.n) bad(meta_path, "block list does not match n");
    for (const auto& name : names) {
      if (name.empty() || name.find('/') != std::string::npos || name == "." || name == "..") {
        bad(meta_path, "bad block file name '" + name + "'");
      }
      const fs::path path = dir / name;
      if (!fs::exists(path)) {
        s.blocks.emplace_back(std::nullopt);
        continue;
      }
      const auto bytes = read_file(path);
      if (bytes.size() != s.block_length * field.symbol_bytes()) {
        bad(path, "expected " + std::to_string(s.block_length * field.symbol_bytes()) + " bytes, found " +
                      std::to_string(bytes.size()));
      }
      try {
        s.blocks.emplace_back(decode_symbols(bytes, field));
      } catch (const Error& e) {
        bad(path, e.what());
      }
    }
  } catch (const json::exception& e) {
    bad(meta_path, e.what());
  }
  return s;
}

MessageBuffer read_message_file(const fs::path& path, const Field& field, std::size_t rows) {
  const auto bytes = read_file(path);
  const std::size_t stride = rows * field.symbol_bytes();
  if (stride == 0 || bytes.size() % stride != 0 || bytes.empty()) {
    throw Error(Errc::PreconditionViolated, path.string() + ": length " + std::to_string(bytes.size()) +
                                                " is not a positive multiple of " + std::to_string(stride) +
                                                " bytes");
  }
  const Payload symbols = decode_symbols(bytes, field);
  const std::size_t block_length = symbols.size() / rows;
  MessageBuffer msg(field, rows, block_length);
  for (std::size_t b = 0; b < block_length; ++b) {
    for (std::size_t r = 0; r < rows; ++r) msg(r, b) = symbols[b * rows + r];
  }
  return msg;
}

void write_message_file(const fs::path& path, const MessageBuffer& msg) {
  Payload symbols;
  symbols.reserve(msg.rows() * msg.cols());
  for (std::size_t b = 0; b < msg.cols(); ++b) {
    for (std::size_t r = 0; r < msg.rows(); ++r) symbols.push_back(msg(r, b));
  }
  write_file(path, encode_symbols(symbols, msg.field()));
}

}  // namespace convcode
