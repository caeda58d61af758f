#pragma once

// Canonical JSON form of a convertible code. Keys are sorted and there is no
// insignificant whitespace, so equal codes serialize to identical bytes. All
// indices are zero-based. Field elements are written as their canonical
// integer encoding: a JSON integer when q - 1 fits in 64 bits, otherwise a
// decimal string.

#include <string>
#include <string_view>

#include "convcode/constructions.hpp"

namespace convcode {

inline constexpr int kFormatVersion = 1;

std::string to_manifest(const ConvertibleCode& code);

/// Parses and validates a manifest. Throws Errc::Format on malformed input.
ConvertibleCode from_manifest(std::string_view text);

/// Lowercase hex SHA-256 of to_manifest(code).
std::string manifest_hash(const ConvertibleCode& code);
std::string sha256_hex(std::string_view bytes);

}  // namespace convcode
