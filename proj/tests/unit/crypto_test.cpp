#include "doctest.h"

#include "iocbench/crypto/cipher.hpp"
#include "iocbench/crypto/codec.hpp"
#include "iocbench/crypto/decryptor.hpp"
#include "iocbench/error.hpp"
#include "iocbench/jsource/parser.hpp"

#include <openssl/evp.h>

using namespace iocbench;
using namespace iocbench::crypto;

namespace {

// Independent references backed by OpenSSL.
std::string ossl_base64(const Bytes& data) {
    std::string out(4 * ((data.size() + 2) / 3) + 1, '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(),
                                  static_cast<int>(data.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

Bytes ossl_aes_cbc(const Bytes& pt, const AesMaterial& m, bool padding = true) {
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    EVP_EncryptInit_ex(ctx, EVP_aes_256_cbc(), nullptr, m.key.data(), m.iv.data());
    EVP_CIPHER_CTX_set_padding(ctx, padding ? 1 : 0);
    Bytes out(pt.size() + 32);
    int len = 0;
    int total = 0;
    EVP_EncryptUpdate(ctx, out.data(), &len, pt.data(), static_cast<int>(pt.size()));
    total = len;
    EVP_EncryptFinal_ex(ctx, out.data() + total, &len);
    total += len;
    EVP_CIPHER_CTX_free(ctx);
    out.resize(static_cast<std::size_t>(total));
    return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> arr(std::string_view hex) {
    const Bytes b = hex_decode(hex);
    std::array<std::uint8_t, N> out{};
    std::copy(b.begin(), b.end(), out.begin());
    return out;
}

Bytes random_bytes(Rng& r, std::size_t max_len) { return r.bytes(static_cast<std::size_t>(r.below(max_len + 1))); }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ConfigError;
}

constexpr std::string_view kNistKey = "603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4";
constexpr std::string_view kNistIv = "000102030405060708090a0b0c0d0e0f";
constexpr std::string_view kNistPlain =
    "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e51"
    "30c81c46a35ce411e5fbc1191a0a52eff69f2445df4f9b17ad2b417be66c3710";

}  // namespace

TEST_CASE("base64 known value and oracle agreement") {
    CHECK(base64_encode(to_bytes("203.0.113.7")) == "MjAzLjAuMTEzLjc=");
    CHECK(to_string(base64_decode("MjAzLjAuMTEzLjc=")) == "203.0.113.7");
    CHECK(base64_encode(Bytes{}) == "");
    Rng r(11);
    for (int i = 0; i < 1000; ++i) {
        const Bytes b = random_bytes(r, 64);
        const std::string e = base64_encode(b);
        CHECK(e == ossl_base64(b));
        CHECK(base64_decode(e) == b);
    }
}

TEST_CASE("base64 rejects malformed input") {
    CHECK(code_of([] { base64_decode("!!!"); }) == ErrorCode::DecodeError);
    CHECK(code_of([] { base64_decode("!!!!"); }) == ErrorCode::DecodeError);
    CHECK(code_of([] { base64_decode("QQ=A"); }) == ErrorCode::DecodeError);
    CHECK(code_of([] { base64_decode("Q==="); }) == ErrorCode::DecodeError);
    CHECK(code_of([] { base64_decode("QR=="); }) == ErrorCode::DecodeError);
    CHECK(code_of([] { base64_decode("QQ==QQ=="); }) == ErrorCode::DecodeError);
}

TEST_CASE("hex") {
    CHECK(hex_encode(Bytes{0x00, 0xab, 0xff}) == "00abff");
    CHECK(hex_decode("00ABff") == Bytes{0x00, 0xab, 0xff});
    CHECK(code_of([] { hex_decode("abc"); }) == ErrorCode::DecodeError);
    CHECK(code_of([] { hex_decode("zz"); }) == ErrorCode::DecodeError);
}

TEST_CASE("xor") {
    const Bytes d = to_bytes("hello");
    CHECK(xor_bytes(d, Bytes{0x00}) == d);
    CHECK(xor_bytes(Bytes{0x41}, Bytes{0x20}) == Bytes{0x61});
    Rng r(12);
    for (int i = 0; i < 1000; ++i) {
        const Bytes data = random_bytes(r, 64);
        Bytes key = r.bytes(1 + static_cast<std::size_t>(r.below(32)));
        CHECK(xor_bytes(xor_bytes(data, key), key) == data);
    }
}

TEST_CASE("AES-256 block function: FIPS-197 and SP 800-38A ECB vectors") {
    CHECK(hex_encode(Aes256(arr<32>("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f"))
                         .encrypt_block(arr<16>("00112233445566778899aabbccddeeff"))) ==
          "8ea2b7ca516745bfeafc49904b496089");
    const Aes256 aes(arr<32>(kNistKey));
    const char* ecb[4] = {"f3eed1bdb5d2a03c064b5a7e3db181f8", "591ccb10d410ed26dc5ba74a31362870",
                          "b6ed21b99ca6f4f9f153e7b1beafed1d", "23304b7a39f9f3ff067d8d8f9e24ecc7"};
    for (int i = 0; i < 4; ++i) {
        const auto pt = arr<16>(kNistPlain.substr(static_cast<std::size_t>(32 * i), 32));
        CHECK(hex_encode(aes.encrypt_block(pt)) == ecb[i]);
        CHECK(aes.decrypt_block(arr<16>(ecb[i])) == pt);
    }
}

TEST_CASE("AES-256-CBC: SP 800-38A vector and PKCS#7") {
    AesMaterial m{arr<32>(kNistKey), arr<16>(kNistIv)};
    const Bytes ct = aes256_encrypt(hex_decode(kNistPlain), m);
    REQUIRE(ct.size() == 80);
    CHECK(hex_encode(std::span(ct).first(64)) ==
          "f58c4c04d6e5f1ba779eabfb5f7bfbd69cfc4e967edb808d679f777bc6702c7d"
          "39f23369a9d9bacfa530e26304231461b2eb05e2c39be9fcda6c19078c6a9d1b");
    CHECK(hex_encode(aes256_encrypt(to_bytes("203.0.113.7"), m)) == "0ea3d5e767879bef4e0fcc36b5a1d87f");
    CHECK(aes256_decrypt(ct, m) == hex_decode(kNistPlain));
}

TEST_CASE("AES-256-CBC agrees with OpenSSL and roundtrips") {
    Rng r(13);
    for (int i = 0; i < 1000; ++i) {
        const AesMaterial m = AesMaterial::generate(r);
        const Bytes p = random_bytes(r, 64);
        const Bytes c = aes256_encrypt(p, m);
        CHECK(c == ossl_aes_cbc(p, m));
        CHECK(aes256_decrypt(c, m) == p);
    }
}

TEST_CASE("AES decrypt errors") {
    AesMaterial m{arr<32>(kNistKey), arr<16>(kNistIv)};
    CHECK(code_of([&] { aes256_decrypt(Bytes{}, m); }) == ErrorCode::LenError);
    CHECK(code_of([&] { aes256_decrypt(Bytes(17, 0), m); }) == ErrorCode::LenError);
    // Encrypt a block ending in 0x00 without padding; decrypting it must
    // fail because a zero pad byte is never valid.
    Bytes block(16, 0x41);
    block[15] = 0x00;
    const Bytes raw = ossl_aes_cbc(block, m, false);
    REQUIRE(raw.size() == 16);
    CHECK(code_of([&] { aes256_decrypt(raw, m); }) == ErrorCode::PadError);
    // Flip the last byte of the previous block so the final plaintext byte
    // becomes pad ^ 0xff, above 16.
    Bytes two = aes256_encrypt(to_bytes("0123456789abcdef0"), m);
    two[15] ^= 0xff;
    CHECK(code_of([&] { aes256_decrypt(two, m); }) == ErrorCode::PadError);
}

TEST_CASE("decryptor templates") {
    const Bytes ip = to_bytes("203.0.113.7");
    const Bytes key{0x11};
    DecryptorParams xp{hex_encode(key), "", hex_encode(xor_bytes(ip, key))};
    const auto x = render_decryptor(Scheme::Xor, xp, "remoteHost");
    CHECK(x.rendered == render_decryptor(Scheme::Xor, xp, "remoteHost").rendered);
    const auto ast = js::parse_source(x.rendered);
    CHECK(ast.root.kids.size() == 4);
    CHECK(x.rendered.find("203.0.113.7") == std::string::npos);
    CHECK(to_string(xor_bytes(hex_decode(xp.ciphertext_hex), hex_decode(xp.key_hex))) == "203.0.113.7");

    AesMaterial m{arr<32>(kNistKey), arr<16>(kNistIv)};
    DecryptorParams ap{hex_encode(m.key), hex_encode(m.iv), hex_encode(aes256_encrypt(ip, m))};
    const auto a = render_decryptor(Scheme::Aes256Cbc, ap, "t");
    CHECK(js::parse_source(a.rendered).root.kids.size() == 5);
    CHECK(a.rendered.find("203.0.113.7") == std::string::npos);
    CHECK(a.rendered.find(ap.key_hex) != std::string::npos);
    CHECK(a.rendered.find(ap.iv_hex) != std::string::npos);

    CHECK(code_of([&] { render_decryptor(Scheme::Aes256Cbc, {"00", ap.iv_hex, ap.ciphertext_hex}, "t"); }) ==
          ErrorCode::TemplateError);
    CHECK(code_of([&] { render_decryptor(Scheme::Xor, {"zz", "", "00"}, "t"); }) == ErrorCode::TemplateError);
    CHECK(code_of([&] { render_decryptor(Scheme::Xor, xp, "var"); }) == ErrorCode::TemplateError);
    CHECK(code_of([&] { render_decryptor(Scheme::Xor, {"", "", "00"}, "t"); }) == ErrorCode::TemplateError);
}
