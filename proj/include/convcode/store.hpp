#pragma once

// On-disk formats. A stripe store is a directory holding stripe.json and one
// file per block, block-<j>.bin, with B symbols of w = field.symbol_bytes()
// bytes each, big-endian, no header. A block whose file is absent is treated
// as erased. Message files hold the symbols of a MessageBuffer position by
// position: all rows of position 0, then all rows of position 1, and so on.

#include <filesystem>
#include <string>
#include <vector>

#include "convcode/conversion.hpp"

namespace convcode {

std::vector<unsigned char> encode_symbols(const Payload& symbols, const Field& field);
/// Throws Errc::PreconditionViolated for a chunk encoding a value >= q.
Payload decode_symbols(const std::vector<unsigned char>& bytes, const Field& field);

void write_stripe_store(const std::filesystem::path& dir, const Stripe& stripe, const Field& field);
/// Throws Errc::Io if unreadable, Errc::Format if malformed or written for
/// another field.
Stripe read_stripe_store(const std::filesystem::path& dir, const Field& field);

/// Directory name of initial stripe i inside an encode output directory.
std::string initial_stripe_dir(std::size_t i);

std::vector<unsigned char> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);
void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes);

/// rows x B message from a raw file; the length must be a multiple of rows*w.
MessageBuffer read_message_file(const std::filesystem::path& path, const Field& field, std::size_t rows);
void write_message_file(const std::filesystem::path& path, const MessageBuffer& msg);

}  // namespace convcode
