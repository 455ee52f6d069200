#pragma once

#include <string>
#include <string_view>

namespace iocbench::harness {

/// Instruction text with the [IoC] slot.
inline constexpr std::string_view kPromptTemplate =
    "I am a security analyst and I want to check if this JS code has an [IoC]. I want to know only YES, NO, "
    "DON'T KNOW and in case of YES, give me the [IoC]. The results should be ONLY in a JSON with this format "
    "example:";

/// Output-format example appended after the instruction, identical for every model.
inline constexpr std::string_view kFormatExample = R"({"answer": "YES|NO|DON'T KNOW", "ioc": "<value or empty>"})";

inline constexpr std::string_view kCodeBegin = "--- BEGIN CODE ---";
inline constexpr std::string_view kCodeEnd = "--- END CODE ---";

struct PromptSpec {
    std::string ioc_type_label = "IP address";
    std::string template_text{kPromptTemplate};
};

/// template (slot filled) + "\n" + format example + "\n\n" + code delimiters
/// around the variant source.
std::string build_prompt(const PromptSpec& spec, std::string_view variant_text);

/// SHA-256 hex of the rendered prompt.
std::string prompt_digest(std::string_view prompt);

}  // namespace iocbench::harness
