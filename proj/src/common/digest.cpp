#include "iocbench/digest.hpp"

#include <openssl/sha.h>

#include <array>

namespace iocbench {

std::vector<std::uint8_t> sha256(std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out(SHA256_DIGEST_LENGTH);
    SHA256(data.data(), data.size(), out.data());
    return out;
}

std::string sha256_hex(std::string_view text) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::array<unsigned char, SHA256_DIGEST_LENGTH> md{};
    SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), md.data());
    std::string out;
    out.reserve(md.size() * 2);
    for (unsigned char c : md) {
        out.push_back(kHex[c >> 4]);
        out.push_back(kHex[c & 0x0f]);
    }
    return out;
}

}  // namespace iocbench
