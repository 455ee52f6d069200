#include "iocbench/crypto/decryptor.hpp"

#include "iocbench/crypto/codec.hpp"
#include "iocbench/error.hpp"
#include "iocbench/jsource/emitter.hpp"
#include "iocbench/jsource/token.hpp"

namespace iocbench::crypto {

std::string_view to_string(Scheme s) { return s == Scheme::Xor ? "xor" : "aes-256-cbc"; }

namespace {

void require_name(std::string_view name) {
    if (!js::is_identifier_name(name) || js::is_keyword(name)) {
        throw Error(ErrorCode::TemplateError, "invalid identifier: " + std::string(name));
    }
}

void require_hex(std::string_view what, std::string_view value, std::size_t min_bytes, std::size_t max_bytes) {
    if (value.empty() || !is_hex(value)) {
        throw Error(ErrorCode::TemplateError, std::string(what) + " is not a hex string");
    }
    for (char c : value) {
        if (c >= 'A' && c <= 'F') throw Error(ErrorCode::TemplateError, std::string(what) + " must be lowercase hex");
    }
    const std::size_t n = value.size() / 2;
    if (n < min_bytes || n > max_bytes) {
        throw Error(ErrorCode::TemplateError, std::string(what) + " has the wrong length");
    }
}

std::string constant(std::string_view name, std::string_view value) {
    return "var " + std::string(name) + " = " + js::quote_string(value) + ";\n";
}

}  // namespace

DecryptorTemplate render_decryptor(Scheme scheme, const DecryptorParams& params, std::string_view target_name,
                                   const DecryptorNames& names) {
    require_name(target_name);
    require_name(names.key);
    require_name(names.payload);
    require_name(names.function);
    const std::string fn = names.function;
    if (names.key == names.payload || names.key == fn || names.payload == fn || target_name == names.key ||
        target_name == names.payload || target_name == fn ||
        (scheme == Scheme::Aes256Cbc && (names.iv == names.key || names.iv == names.payload ||
                                         names.iv == fn || names.iv == target_name))) {
        throw Error(ErrorCode::TemplateError, "decryptor names must be distinct");
    }
    std::string out;
    if (scheme == Scheme::Xor) {
        require_hex("xor key", params.key_hex, 1, 32);
        require_hex("ciphertext", params.ciphertext_hex, 1, 4096);
        if (!params.iv_hex.empty()) throw Error(ErrorCode::TemplateError, "xor takes no iv");
        out += constant(names.key, params.key_hex);
        out += constant(names.payload, params.ciphertext_hex);
        out += "function " + fn + "(c, k) {\n"
               "  var out = \"\";\n"
               "  for (var i = 0; i < c.length; i += 2) {\n"
               "    out += String.fromCharCode(parseInt(c.substr(i, 2), 16) ^ parseInt(k.substr(i % k.length, 2), 16));\n"
               "  }\n"
               "  return out;\n"
               "}\n";
        out += "var " + std::string(target_name) + " = " + fn + "(" + names.payload + ", " + names.key + ");\n";
    } else {
        require_name(names.iv);
        require_hex("aes key", params.key_hex, 32, 32);
        require_hex("aes iv", params.iv_hex, 16, 16);
        require_hex("ciphertext", params.ciphertext_hex, 16, 4096);
        if (params.ciphertext_hex.size() % 32 != 0) {
            throw Error(ErrorCode::TemplateError, "ciphertext is not whole blocks");
        }
        out += constant(names.key, params.key_hex);
        out += constant(names.iv, params.iv_hex);
        out += constant(names.payload, params.ciphertext_hex);
        out += "function " + fn + "(c, k, v) {\n"
               "  var h = require(\"crypto\").createDecipheriv(\"aes-256-cbc\", Buffer.from(k, \"hex\"), Buffer.from(v, \"hex\"));\n"
               "  return h.update(c, \"hex\", \"utf8\") + h.final(\"utf8\");\n"
               "}\n";
        out += "var " + std::string(target_name) + " = " + fn + "(" + names.payload + ", " + names.key + ", " +
               names.iv + ");\n";
    }
    return DecryptorTemplate{scheme, std::move(out)};
}

}  // namespace iocbench::crypto
