#pragma once

#include "iocbench/groundtruth/record.hpp"
#include "iocbench/jsource/ast.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench::groundtruth {

enum class CheckKind { Syntactic, GroundTruth, Behavioral };
enum class Verdict { Pass, Fail, Skipped };

std::string_view to_string(CheckKind c);
std::string_view to_string(Verdict v);

struct CheckResult {
    CheckKind check = CheckKind::Syntactic;
    Verdict verdict = Verdict::Fail;
    std::string detail;
};

/// {"variant_id", "check", "verdict", "detail"}.
nlohmann::json check_to_json(const std::string& variant_id, const CheckResult& r);

/// Marker comment that admits a corpus file to behavioral checking.
inline constexpr std::string_view kHarnessMarker = "@iocbench-harness";

CheckResult verify_syntactic(std::string_view variant_text);

/// Decryptor constants found in a parsed variant.
struct ExtractedConstants {
    std::string ciphertext_hex;
    std::string key_hex;
    std::optional<std::string> iv_hex;
    /// The call that produces the plaintext.
    const js::Node* call = nullptr;
};

/// Every call of a decryptor-shaped function (through forwarding wrappers)
/// whose arguments resolve to hex string constants: directly, through a
/// top-level variable, or through a string-table accessor.
std::vector<ExtractedConstants> extract_decryptor_constants(const js::Ast& ast, bool aes);

CheckResult verify_ground_truth(std::string_view variant_text, const VariantRecord& record);

/// Runs the original and the variant under runtime_command and compares
/// stdout. Encrypted variants also print the decryptor result, which must
/// equal the canonical indicator. Skipped without a runtime or when the
/// original lacks the harness marker. Throws Error(RuntimeError) when the
/// runtime cannot be spawned.
CheckResult verify_behavioral(std::string_view original_text, std::string_view variant_text,
                              const VariantRecord& record, const std::optional<std::string>& runtime_command);

}  // namespace iocbench::groundtruth
