#include "iocbench/harness/prompt.hpp"

#include "iocbench/digest.hpp"

namespace iocbench::harness {

std::string build_prompt(const PromptSpec& spec, std::string_view variant_text) {
    std::string text = spec.template_text;
    const std::string slot = "[IoC]";
    for (auto at = text.find(slot); at != std::string::npos; at = text.find(slot, at + spec.ioc_type_label.size())) {
        text.replace(at, slot.size(), spec.ioc_type_label);
    }
    std::string out = text;
    out += '\n';
    out += kFormatExample;
    out += "\n\n";
    out += kCodeBegin;
    out += '\n';
    out += variant_text;
    if (!variant_text.empty() && variant_text.back() != '\n') out += '\n';
    out += kCodeEnd;
    out += '\n';
    return out;
}

std::string prompt_digest(std::string_view prompt) { return sha256_hex(prompt); }

}  // namespace iocbench::harness
