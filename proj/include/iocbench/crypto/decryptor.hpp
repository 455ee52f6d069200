#pragma once

#include <string>
#include <string_view>

namespace iocbench::crypto {

enum class Scheme { Xor, Aes256Cbc };

std::string_view to_string(Scheme s);

struct DecryptorParams {
    std::string key_hex;
    std::string iv_hex;  // aes only
    std::string ciphertext_hex;
};

/// Identifiers used by the rendered code.
struct DecryptorNames {
    std::string key = "KEY";
    std::string iv = "IV";
    std::string payload = "PAYLOAD";
    std::string function = "decrypt";
};

/// Rendered source. Its statements are, in order: the hex constants (key,
/// [iv,] payload), the decrypt function, and `var <target> = <fn>(payload,
/// key[, iv]);`.
///
/// xor: fn(c, k) XORs hex byte i of c with hex byte i mod len of k.
/// aes-256-cbc: fn(c, k, v) calls require("crypto").createDecipheriv.
struct DecryptorTemplate {
    Scheme scheme = Scheme::Xor;
    std::string rendered;
};

/// Throws Error(TemplateError) on malformed params or names.
DecryptorTemplate render_decryptor(Scheme scheme, const DecryptorParams& params, std::string_view target_name,
                                   const DecryptorNames& names = {});

}  // namespace iocbench::crypto
