#include "iocbench/transforms/phase.hpp"

#include "iocbench/digest.hpp"
#include "iocbench/error.hpp"

#include <algorithm>

namespace iocbench::transforms {

std::string_view to_string(Component c) {
    switch (c) {
        case Component::PlainInsert: return "plain-insert";
        case Component::Base64: return "base64";
        case Component::Rename: return "rename";
        case Component::DeadCode: return "dead-code";
        case Component::Structural: return "structural";
        case Component::Xor: return "xor";
        case Component::Aes: return "aes";
    }
    return "plain-insert";
}

bool TransformPhase::has(Component c) const {
    return std::find(components.begin(), components.end(), c) != components.end();
}

std::string_view TransformPhase::encoding() const {
    if (has(Component::Base64)) return "base64";
    if (has(Component::Xor)) return "xor";
    if (has(Component::Aes)) return "aes-256-cbc";
    return "plain";
}

const std::array<TransformPhase, kPhaseCount>& all_phases() {
    using C = Component;
    static const std::array<TransformPhase, kPhaseCount> kPhases = {{
        {0, {C::PlainInsert}},
        {1, {C::Base64}},
        {2, {C::Base64, C::Rename}},
        {3, {C::Base64, C::Rename, C::DeadCode}},
        {4, {C::Base64, C::Rename, C::DeadCode, C::Structural}},
        {5, {C::Xor}},
        {6, {C::Aes}},
        {7, {C::Xor, C::Rename}},
        {8, {C::Aes, C::Rename}},
        {9, {C::Xor, C::DeadCode}},
        {10, {C::Aes, C::DeadCode}},
        {11, {C::Xor, C::Structural}},
        {12, {C::Aes, C::Structural}},
    }};
    return kPhases;
}

const TransformPhase& phase(int id) {
    if (id < 0 || id >= kPhaseCount) throw Error(ErrorCode::SchemaError, "no phase " + std::to_string(id));
    return all_phases()[static_cast<std::size_t>(id)];
}

const TransformPhase& phase_from_name(std::string_view name) {
    for (const auto& p : all_phases()) {
        if (p.name() == name) return p;
    }
    throw Error(ErrorCode::SchemaError, "unknown phase: " + std::string(name));
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view file_id, std::string_view stream) {
    std::string buf = "iocbench.seed.v1";
    auto field = [&](std::string_view s) {
        buf += std::to_string(s.size());
        buf += ':';
        buf += s;
    };
    field(std::to_string(master_seed));
    field(file_id);
    field(stream);
    const auto d = sha256(std::span(reinterpret_cast<const std::uint8_t*>(buf.data()), buf.size()));
    std::uint64_t seed = 0;
    for (int i = 0; i < 8; ++i) seed = (seed << 8) | d[static_cast<std::size_t>(i)];
    return seed;
}

}  // namespace iocbench::transforms
