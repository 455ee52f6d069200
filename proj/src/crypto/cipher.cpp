#include "iocbench/crypto/cipher.hpp"

#include "iocbench/error.hpp"

namespace iocbench::crypto {

Bytes xor_bytes(std::span<const std::uint8_t> data, std::span<const std::uint8_t> key) {
    if (key.empty()) throw Error(ErrorCode::TemplateError, "empty xor key");
    Bytes out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[i] = data[i] ^ key[i % key.size()];
    }
    return out;
}

AesMaterial AesMaterial::generate(Rng& rng) {
    AesMaterial m;
    for (auto& b : m.key) b = rng.byte();
    for (auto& b : m.iv) b = rng.byte();
    return m;
}

namespace {

constexpr std::uint8_t xtime(std::uint8_t x) {
    return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) != 0 ? 0x1b : 0));
}

constexpr std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t p = 0;
    while (b != 0) {
        if ((b & 1) != 0) p ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return p;
}

constexpr std::uint8_t rotl8(std::uint8_t x, int s) {
    return static_cast<std::uint8_t>((x << s) | (x >> (8 - s)));
}

struct Tables {
    std::array<std::uint8_t, 256> sbox{};
    std::array<std::uint8_t, 256> inv{};
};

// S-box from the multiplicative inverse in GF(2^8) and the affine map.
constexpr Tables make_tables() {
    Tables t{};
    for (int i = 0; i < 256; ++i) {
        std::uint8_t inverse = 0;
        for (int j = 1; j < 256 && i != 0; ++j) {
            if (gmul(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)) == 1) {
                inverse = static_cast<std::uint8_t>(j);
                break;
            }
        }
        const std::uint8_t s = inverse ^ rotl8(inverse, 1) ^ rotl8(inverse, 2) ^ rotl8(inverse, 3) ^
                               rotl8(inverse, 4) ^ 0x63;
        t.sbox[static_cast<std::size_t>(i)] = s;
        t.inv[s] = static_cast<std::uint8_t>(i);
    }
    return t;
}

const Tables& tables() {
    static const Tables t = make_tables();
    return t;
}

std::uint32_t sub_word(std::uint32_t w) {
    const auto& s = tables().sbox;
    return (std::uint32_t{s[w >> 24]} << 24) | (std::uint32_t{s[(w >> 16) & 0xff]} << 16) |
           (std::uint32_t{s[(w >> 8) & 0xff]} << 8) | s[w & 0xff];
}

using State = std::array<std::uint8_t, 16>;  // column-major, as in the block

void add_round_key(State& st, const std::uint32_t* rk) {
    for (int c = 0; c < 4; ++c) {
        st[4 * c] ^= static_cast<std::uint8_t>(rk[c] >> 24);
        st[4 * c + 1] ^= static_cast<std::uint8_t>(rk[c] >> 16);
        st[4 * c + 2] ^= static_cast<std::uint8_t>(rk[c] >> 8);
        st[4 * c + 3] ^= static_cast<std::uint8_t>(rk[c]);
    }
}

void sub_bytes(State& st, const std::array<std::uint8_t, 256>& box) {
    for (auto& b : st) b = box[b];
}

void shift_rows(State& st, bool inverse) {
    State out{};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const int from = inverse ? (c - r + 4) % 4 : (c + r) % 4;
            out[4 * c + r] = st[4 * from + r];
        }
    }
    st = out;
}

void mix_columns(State& st, bool inverse) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* col = &st[4 * c];
        const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        if (!inverse) {
            col[0] = gmul(a0, 2) ^ gmul(a1, 3) ^ a2 ^ a3;
            col[1] = a0 ^ gmul(a1, 2) ^ gmul(a2, 3) ^ a3;
            col[2] = a0 ^ a1 ^ gmul(a2, 2) ^ gmul(a3, 3);
            col[3] = gmul(a0, 3) ^ a1 ^ a2 ^ gmul(a3, 2);
        } else {
            col[0] = gmul(a0, 14) ^ gmul(a1, 11) ^ gmul(a2, 13) ^ gmul(a3, 9);
            col[1] = gmul(a0, 9) ^ gmul(a1, 14) ^ gmul(a2, 11) ^ gmul(a3, 13);
            col[2] = gmul(a0, 13) ^ gmul(a1, 9) ^ gmul(a2, 14) ^ gmul(a3, 11);
            col[3] = gmul(a0, 11) ^ gmul(a1, 13) ^ gmul(a2, 9) ^ gmul(a3, 14);
        }
    }
}

constexpr int kRounds = 14;

}  // namespace

Aes256::Aes256(const AesKey& key) {
    for (int i = 0; i < 8; ++i) {
        w_[static_cast<std::size_t>(i)] = (std::uint32_t{key[4 * i]} << 24) | (std::uint32_t{key[4 * i + 1]} << 16) |
                                          (std::uint32_t{key[4 * i + 2]} << 8) | key[4 * i + 3];
    }
    std::uint8_t rcon = 1;
    for (std::size_t i = 8; i < w_.size(); ++i) {
        std::uint32_t t = w_[i - 1];
        if (i % 8 == 0) {
            t = sub_word((t << 8) | (t >> 24)) ^ (std::uint32_t{rcon} << 24);
            rcon = xtime(rcon);
        } else if (i % 8 == 4) {
            t = sub_word(t);
        }
        w_[i] = w_[i - 8] ^ t;
    }
}

AesBlock Aes256::encrypt_block(const AesBlock& in) const {
    State st = in;
    add_round_key(st, &w_[0]);
    for (int round = 1; round < kRounds; ++round) {
        sub_bytes(st, tables().sbox);
        shift_rows(st, false);
        mix_columns(st, false);
        add_round_key(st, &w_[static_cast<std::size_t>(4 * round)]);
    }
    sub_bytes(st, tables().sbox);
    shift_rows(st, false);
    add_round_key(st, &w_[4 * kRounds]);
    return st;
}

AesBlock Aes256::decrypt_block(const AesBlock& in) const {
    State st = in;
    add_round_key(st, &w_[4 * kRounds]);
    for (int round = kRounds - 1; round >= 1; --round) {
        shift_rows(st, true);
        sub_bytes(st, tables().inv);
        add_round_key(st, &w_[static_cast<std::size_t>(4 * round)]);
        mix_columns(st, true);
    }
    shift_rows(st, true);
    sub_bytes(st, tables().inv);
    add_round_key(st, &w_[0]);
    return st;
}

Bytes aes256_encrypt(std::span<const std::uint8_t> plaintext, const AesMaterial& m) {
    const Aes256 aes(m.key);
    const std::size_t pad = 16 - plaintext.size() % 16;
    Bytes padded(plaintext.begin(), plaintext.end());
    padded.insert(padded.end(), pad, static_cast<std::uint8_t>(pad));
    Bytes out;
    out.reserve(padded.size());
    AesBlock prev = m.iv;
    for (std::size_t i = 0; i < padded.size(); i += 16) {
        AesBlock b{};
        for (std::size_t j = 0; j < 16; ++j) b[j] = padded[i + j] ^ prev[j];
        prev = aes.encrypt_block(b);
        out.insert(out.end(), prev.begin(), prev.end());
    }
    return out;
}

Bytes aes256_decrypt(std::span<const std::uint8_t> ciphertext, const AesMaterial& m) {
    if (ciphertext.empty() || ciphertext.size() % 16 != 0) {
        throw Error(ErrorCode::LenError, "ciphertext length is not a positive multiple of 16");
    }
    const Aes256 aes(m.key);
    Bytes out;
    out.reserve(ciphertext.size());
    AesBlock prev = m.iv;
    for (std::size_t i = 0; i < ciphertext.size(); i += 16) {
        AesBlock c{};
        std::copy_n(ciphertext.begin() + static_cast<std::ptrdiff_t>(i), 16, c.begin());
        const AesBlock p = aes.decrypt_block(c);
        for (std::size_t j = 0; j < 16; ++j) out.push_back(p[j] ^ prev[j]);
        prev = c;
    }
    const std::uint8_t pad = out.back();
    if (pad == 0 || pad > 16) throw Error(ErrorCode::PadError, "invalid PKCS#7 padding");
    for (std::size_t j = 0; j < pad; ++j) {
        if (out[out.size() - 1 - j] != pad) throw Error(ErrorCode::PadError, "invalid PKCS#7 padding");
    }
    out.resize(out.size() - pad);
    return out;
}

}  // namespace iocbench::crypto
