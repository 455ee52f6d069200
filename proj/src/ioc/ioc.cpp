#include "iocbench/ioc/ioc.hpp"

#include "iocbench/error.hpp"

#include <cctype>
#include <vector>

namespace iocbench::ioc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

// Decimal without leading zeros, value <= max.
std::optional<unsigned> small_decimal(std::string_view s, unsigned max) {
    if (!all_digits(s) || s.size() > 3 || (s.size() > 1 && s[0] == '0')) return std::nullopt;
    unsigned v = 0;
    for (char c : s) v = v * 10 + static_cast<unsigned>(c - '0');
    if (v > max) return std::nullopt;
    return v;
}

bool is_base64_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '/';
}

bool is_domain(std::string_view s) {
    const auto labels = split(s, '.');
    if (labels.size() < 2) return false;
    for (auto l : labels) {
        if (l.empty()) return false;
        for (char c : l) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') return false;
        }
    }
    for (char c : labels.back()) {
        if (!std::isalpha(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool is_base64_blob(std::string_view s) {
    if (s.size() < 16) return false;
    std::size_t pad = 0;
    while (pad < s.size() && s[s.size() - 1 - pad] == '=') ++pad;
    if (pad > 2) return false;
    for (std::size_t i = 0; i + pad < s.size(); ++i) {
        if (!is_base64_char(s[i])) return false;
    }
    return true;
}

}  // namespace

std::string Ioc::canonical() const {
    return std::to_string(octets[0]) + "." + std::to_string(octets[1]) + "." + std::to_string(octets[2]) + "." +
           std::to_string(octets[3]);
}

std::uint32_t Ioc::value() const {
    return (std::uint32_t{octets[0]} << 24) | (std::uint32_t{octets[1]} << 16) | (std::uint32_t{octets[2]} << 8) |
           std::uint32_t{octets[3]};
}

Ioc Ioc::from_value(std::uint32_t v) {
    return Ioc{{static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)}};
}

Cidr Cidr::parse(std::string_view text) {
    const auto parts = split(trim(text), '/');
    if (parts.size() != 2) throw Error(ErrorCode::ConfigError, "bad CIDR: " + std::string(text));
    const auto ip = validate_ipv4(parts[0]);
    const auto prefix = small_decimal(parts[1], 32);
    if (!ip || !prefix) throw Error(ErrorCode::ConfigError, "bad CIDR: " + std::string(text));
    Cidr c;
    c.prefix = static_cast<int>(*prefix);
    const std::uint32_t mask = c.prefix == 0 ? 0 : ~std::uint32_t{0} << (32 - c.prefix);
    c.base = ip->value() & mask;
    return c;
}

bool Cidr::contains(const Ioc& ip) const {
    const std::uint32_t mask = prefix == 0 ? 0 : ~std::uint32_t{0} << (32 - prefix);
    return (ip.value() & mask) == base;
}

Ioc generate_ioc(Rng& rng, const Cidr& range) {
    return Ioc::from_value(range.base + static_cast<std::uint32_t>(rng.below(range.size())));
}

std::optional<Ioc> validate_ipv4(std::string_view text) {
    const auto parts = split(trim(text), '.');
    if (parts.size() != 4) return std::nullopt;
    Ioc ip;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto v = small_decimal(parts[i], 255);
        if (!v) return std::nullopt;
        ip.octets[i] = static_cast<std::uint8_t>(*v);
    }
    return ip;
}

std::string_view to_string(ArtifactClass c) {
    switch (c) {
        case ArtifactClass::Ipv4: return "ipv4";
        case ArtifactClass::Cidr: return "cidr";
        case ArtifactClass::Domain: return "domain";
        case ArtifactClass::Base64Blob: return "base64-blob";
        case ArtifactClass::OtherString: return "other-string";
    }
    return "other-string";
}

ArtifactClass classify_artifact(std::string_view text) {
    const std::string_view s = trim(text);
    if (validate_ipv4(s)) return ArtifactClass::Ipv4;
    const auto slash = s.find('/');
    if (slash != std::string_view::npos && validate_ipv4(s.substr(0, slash)) &&
        small_decimal(s.substr(slash + 1), 32)) {
        return ArtifactClass::Cidr;
    }
    if (is_domain(s)) return ArtifactClass::Domain;
    if (is_base64_blob(s)) return ArtifactClass::Base64Blob;
    return ArtifactClass::OtherString;
}

}  // namespace iocbench::ioc
