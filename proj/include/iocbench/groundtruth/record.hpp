#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace iocbench::groundtruth {

struct DeadCodeParams {
    std::vector<std::string> template_ids;
    std::string pool_version;

    bool operator==(const DeadCodeParams&) const = default;
};

struct StructuralParams {
    bool string_array = false;
    std::uint64_t string_count = 0;
    std::uint64_t rotation = 0;
    bool flattening = false;
    std::uint64_t flattened = 0;
    std::vector<std::string> flatten_skips;
    std::int64_t wrapper_depth = 0;
    std::uint64_t wrapped_functions = 0;

    bool operator==(const StructuralParams&) const = default;
};

struct RenameParams {
    std::uint64_t renamed = 0;
    /// (original, new) pairs in binding order.
    std::vector<std::pair<std::string, std::string>> map;

    bool operator==(const RenameParams&) const = default;
};

/// The parameters consumed by one phase's components, and nothing else.
struct TransformParams {
    std::uint64_t seed = 0;
    std::string insertion_point_kind;
    std::optional<std::string> xor_key;
    std::optional<std::string> aes_key;
    std::optional<std::string> aes_iv;
    std::optional<DeadCodeParams> dead_code;
    std::optional<StructuralParams> structural;
    std::optional<RenameParams> rename;

    bool operator==(const TransformParams&) const = default;
};

struct VariantRecord {
    std::string original_filename;
    std::string phase;
    TransformParams params;
    std::string ioc_canonical;
    std::string ioc_location;
    /// plain, base64, xor or aes-256-cbc.
    std::string encoding;
    std::optional<std::string> key_hex;
    std::optional<std::string> iv_hex;
    std::optional<std::string> ciphertext_hex;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string content_digest;

    bool operator==(const VariantRecord&) const = default;
};

/// Throws Error(SchemaError) when a field is malformed, an encoding field is
/// present or absent against the encoding, or params do not match the phase.
void validate_record(const VariantRecord& record);

nlohmann::json record_to_json(const VariantRecord& record);
/// Strict: missing or unknown fields throw Error(SchemaError).
VariantRecord record_from_json(const nlohmann::json& j);

/// Validates, then writes pretty JSON with a trailing newline.
void write_record(const VariantRecord& record, const std::filesystem::path& path);
VariantRecord read_record(const std::filesystem::path& path);

}  // namespace iocbench::groundtruth
