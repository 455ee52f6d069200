#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench::crypto {

using Bytes = std::vector<std::uint8_t>;

Bytes to_bytes(std::string_view s);
std::string to_string(std::span<const std::uint8_t> b);

/// Standard alphabet, padded.
std::string base64_encode(std::span<const std::uint8_t> data);
/// Strict: standard alphabet, length a multiple of 4, canonical padding.
/// Throws Error(DecodeError).
Bytes base64_decode(std::string_view text);

/// Lowercase, no separators.
std::string hex_encode(std::span<const std::uint8_t> data);
/// Accepts either case; throws Error(DecodeError) on odd length or a non-hex digit.
Bytes hex_decode(std::string_view text);
bool is_hex(std::string_view text);

}  // namespace iocbench::crypto
