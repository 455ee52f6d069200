#pragma once

#include "iocbench/crypto/codec.hpp"
#include "iocbench/rng.hpp"

#include <array>

namespace iocbench::crypto {

/// data[i] ^ key[i % key.size()]. key must be non-empty.
Bytes xor_bytes(std::span<const std::uint8_t> data, std::span<const std::uint8_t> key);

using AesKey = std::array<std::uint8_t, 32>;
using AesIv = std::array<std::uint8_t, 16>;
using AesBlock = std::array<std::uint8_t, 16>;

struct AesMaterial {
    AesKey key{};
    AesIv iv{};

    static AesMaterial generate(Rng& rng);
};

/// Expanded AES-256 key schedule.
class Aes256 {
public:
    explicit Aes256(const AesKey& key);
    AesBlock encrypt_block(const AesBlock& in) const;
    AesBlock decrypt_block(const AesBlock& in) const;

private:
    std::array<std::uint32_t, 60> w_{};
};

/// CBC with PKCS#7 padding.
Bytes aes256_encrypt(std::span<const std::uint8_t> plaintext, const AesMaterial& m);
/// Throws Error(LenError) when the input is empty or not a multiple of 16,
/// Error(PadError) when the padding is malformed.
Bytes aes256_decrypt(std::span<const std::uint8_t> ciphertext, const AesMaterial& m);

}  // namespace iocbench::crypto
