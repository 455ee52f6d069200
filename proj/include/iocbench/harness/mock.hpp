#pragma once

#include "iocbench/harness/client.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench::harness {

/// Matches when every present condition holds.
struct MockRule {
    /// Empty matches any phase.
    std::vector<std::string> phases;
    std::optional<std::string> contains;
    /// "{{ioc}}" expands to the ground-truth indicator.
    std::string body;
};

struct MockScript {
    std::string name;
    std::vector<MockRule> rules;
    /// Answer when no rule matches; makes the script total.
    std::string default_body;
    /// Built-in scripts compute the answer instead of using rules.
    std::function<std::string(const QueryRequest&)> compute;
};

MockScript oracle_script();
/// YES with the value when a string literal is a dotted quad or Base64 of
/// one; NO otherwise.
MockScript scanner_script();
MockScript dont_know_script();

/// {"name": ..., "rules": [{"phases": [...], "contains": ..., "body": ...}], "default": ...}.
/// Throws Error(ConfigError) when "default" is missing or a field is malformed.
MockScript mock_script_from_json(const nlohmann::json& j);

/// "oracle", "scanner", "dont-know", or a path to a JSON script.
MockScript load_mock_script(const std::string& name_or_path);

/// First dotted quad found as a string literal, directly or Base64-encoded.
std::optional<std::string> scan_plaintext_ioc(std::string_view source);

std::unique_ptr<ModelClient> make_mock_client(MockScript script, WallClock clock = {});

}  // namespace iocbench::harness
