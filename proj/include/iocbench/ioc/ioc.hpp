#pragma once

#include "iocbench/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace iocbench::ioc {

/// An IPv4 indicator.
struct Ioc {
    std::array<std::uint8_t, 4> octets{};

    /// Dotted quad without leading zeros.
    std::string canonical() const;
    std::uint32_t value() const;
    static Ioc from_value(std::uint32_t v);

    bool operator==(const Ioc&) const = default;
};

struct Cidr {
    std::uint32_t base = 0;
    int prefix = 32;

    static Cidr parse(std::string_view text);
    std::uint64_t size() const { return std::uint64_t{1} << (32 - prefix); }
    bool contains(const Ioc& ip) const;
};

/// 203.0.113.0/24, a documentation range.
inline constexpr std::string_view kDefaultRange = "203.0.113.0/24";

/// Uniform draw from range.
Ioc generate_ioc(Rng& rng, const Cidr& range = Cidr::parse(kDefaultRange));

/// Strict dotted quad: four decimal octets in [0,255], no leading zeros, no
/// sign, no suffix. Surrounding whitespace is ignored.
std::optional<Ioc> validate_ipv4(std::string_view text);

enum class ArtifactClass { Ipv4, Cidr, Domain, Base64Blob, OtherString };

std::string_view to_string(ArtifactClass c);

/// Total classification with precedence ipv4 > cidr > domain > base64-blob
/// > other-string.
ArtifactClass classify_artifact(std::string_view text);

}  // namespace iocbench::ioc
