#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench::transforms {

enum class Component { PlainInsert, Base64, Rename, DeadCode, Structural, Xor, Aes };

std::string_view to_string(Component c);

inline constexpr int kPhaseCount = 13;

struct TransformPhase {
    int id = 0;
    std::vector<Component> components;

    std::string name() const { return "P" + std::to_string(id); }
    bool has(Component c) const;
    /// Renaming runs for explicit rename phases and for structural ones,
    /// which delegate identifier mangling to it.
    bool renames() const { return has(Component::Rename) || has(Component::Structural); }
    /// "plain", "base64", "xor" or "aes-256-cbc".
    std::string_view encoding() const;
};

const TransformPhase& phase(int id);
const std::array<TransformPhase, kPhaseCount>& all_phases();
/// "P0".."P12"; throws Error(SchemaError) otherwise.
const TransformPhase& phase_from_name(std::string_view name);

/// First 8 bytes (big-endian) of SHA-256 over a length-prefixed encoding of
/// the three inputs. stream is a phase name ("P3") or another label ("ioc").
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view file_id, std::string_view stream);

}  // namespace iocbench::transforms
