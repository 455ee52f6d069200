#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench {

/// Lowercase hex SHA-256 of the given text.
std::string sha256_hex(std::string_view text);

std::vector<std::uint8_t> sha256(std::span<const std::uint8_t> data);

}  // namespace iocbench
