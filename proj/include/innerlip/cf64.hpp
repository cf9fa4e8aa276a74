#pragma once

#include <filesystem>
#include <string>

#include "innerlip/field.hpp"

namespace innerlip::cf64 {

inline constexpr std::uint32_t version = 1;
inline constexpr std::uint32_t flag_supported_in_2D = 1u;
inline constexpr std::uint32_t flag_mask = 2u;
inline constexpr std::size_t header_bytes = 24;

/// Little-endian CF64 encoding of a field (header, n*n (re, im) f64 pairs, optional mask bytes).
std::string encode(const ComplexField& field);
/// Throws Error(io) naming the byte offset of the first problem.
ComplexField decode(const std::string& bytes, const std::string& source = "<memory>");

void write(const std::filesystem::path& path, const ComplexField& field);
ComplexField read(const std::filesystem::path& path);

}  // namespace innerlip::cf64

namespace innerlip {

/// Writes via a sibling temp file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace innerlip
