#pragma once

#include "iocbench/ioc/ioc.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace iocbench::scoring {

enum class Decision { Yes, No, DontKnow, Invalid };

/// "YES", "NO", "DONT_KNOW", "INVALID".
std::string_view to_string(Decision d);

struct NormalizedAnswer {
    Decision decision = Decision::Invalid;
    /// Reported artifact; only ever set for YES.
    std::optional<std::string> value;
    std::optional<ioc::ArtifactClass> value_class;
    std::string extraction_note;

    bool operator==(const NormalizedAnswer&) const = default;
};

/// Finds the first balanced JSON object carrying an "answer" (or "decision")
/// field and maps it onto the four decisions. The reported value comes from
/// "ioc" (or "value"). Never throws.
NormalizedAnswer normalize_response(std::string_view body) noexcept;

}  // namespace iocbench::scoring
