#include "iocbench/groundtruth/record.hpp"

#include "iocbench/crypto/codec.hpp"
#include "iocbench/error.hpp"
#include "iocbench/fs_util.hpp"
#include "iocbench/ioc/ioc.hpp"
#include "iocbench/json_util.hpp"
#include "iocbench/jsource/insertion.hpp"
#include "iocbench/transforms/phase.hpp"

namespace iocbench::groundtruth {

using nlohmann::json;
using transforms::Component;

namespace {

[[noreturn]] void schema(const std::string& message) { throw Error(ErrorCode::SchemaError, message); }

bool lower_hex(const std::string& s) {
    if (s.empty() || s.size() % 2 != 0) return false;
    for (char c : s) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

void check_hex(const std::optional<std::string>& v, const char* name) {
    if (v && !lower_hex(*v)) schema(std::string(name) + " is not lowercase hex");
}

void require(bool present, bool wanted, const char* name, const std::string& context) {
    if (present && !wanted) schema(std::string(name) + " not allowed for " + context);
    if (!present && wanted) schema(std::string(name) + " required for " + context);
}

json params_to_json(const TransformParams& p) {
    json j = {{"seed", p.seed}, {"insertion_point_kind", p.insertion_point_kind}};
    if (p.xor_key) j["xor_key"] = *p.xor_key;
    if (p.aes_key) j["aes_key"] = *p.aes_key;
    if (p.aes_iv) j["aes_iv"] = *p.aes_iv;
    if (p.dead_code) {
        j["dead_code_template_ids"] = p.dead_code->template_ids;
        j["dead_code_pool_version"] = p.dead_code->pool_version;
    }
    if (p.structural) {
        const auto& s = *p.structural;
        j["structural"] = {{"string_array", s.string_array},   {"string_count", s.string_count},
                           {"rotation", s.rotation},           {"flattening", s.flattening},
                           {"flattened", s.flattened},         {"flatten_skips", s.flatten_skips},
                           {"wrapper_depth", s.wrapper_depth}, {"wrapped_functions", s.wrapped_functions}};
    }
    if (p.rename) {
        json map = json::array();
        for (const auto& [from, to] : p.rename->map) map.push_back({from, to});
        j["rename"] = {{"renamed", p.rename->renamed}, {"map", std::move(map)}};
    }
    return j;
}

TransformParams params_from_json(const json& j) {
    if (!j.is_object()) schema("params is not an object");
    TransformParams p;
    std::vector<std::string> keys = {"seed", "insertion_point_kind"};
    p.seed = get_u64(j, "seed");
    p.insertion_point_kind = get_string(j, "insertion_point_kind");
    for (const char* k : {"xor_key", "aes_key", "aes_iv"}) {
        if (!j.contains(k)) continue;
        keys.emplace_back(k);
        std::string v = get_string(j, k);
        if (std::string_view(k) == "xor_key") p.xor_key = v;
        if (std::string_view(k) == "aes_key") p.aes_key = v;
        if (std::string_view(k) == "aes_iv") p.aes_iv = v;
    }
    if (j.contains("dead_code_template_ids") || j.contains("dead_code_pool_version")) {
        keys.emplace_back("dead_code_template_ids");
        keys.emplace_back("dead_code_pool_version");
        p.dead_code = DeadCodeParams{get_strings(j, "dead_code_template_ids"), get_string(j, "dead_code_pool_version")};
    }
    if (j.contains("structural")) {
        keys.emplace_back("structural");
        const json& s = j["structural"];
        expect_keys(s,
                    {"string_array", "string_count", "rotation", "flattening", "flattened", "flatten_skips",
                     "wrapper_depth", "wrapped_functions"},
                    "params.structural");
        p.structural = StructuralParams{get_bool(s, "string_array"),  get_u64(s, "string_count"),
                                        get_u64(s, "rotation"),       get_bool(s, "flattening"),
                                        get_u64(s, "flattened"),      get_strings(s, "flatten_skips"),
                                        get_i64(s, "wrapper_depth"),  get_u64(s, "wrapped_functions")};
    }
    if (j.contains("rename")) {
        keys.emplace_back("rename");
        const json& r = j["rename"];
        expect_keys(r, {"renamed", "map"}, "params.rename");
        RenameParams rp;
        rp.renamed = get_u64(r, "renamed");
        if (!r["map"].is_array()) schema("params.rename.map must be an array");
        for (const auto& pair : r["map"]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
                schema("params.rename.map entries must be [original, new] pairs");
            }
            rp.map.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
        p.rename = std::move(rp);
    }
    expect_keys(j, keys, "params");
    return p;
}

std::optional<std::string> optional_hex(const json& j, const char* key, std::vector<std::string>& keys) {
    if (!j.contains(key)) return std::nullopt;
    keys.emplace_back(key);
    return get_string(j, key);
}

}  // namespace

void validate_record(const VariantRecord& r) {
    const auto& ph = transforms::phase_from_name(r.phase);
    const std::string ctx = r.phase;
    if (r.original_filename.empty()) schema("original_filename is empty");
    if (r.tool_version.empty()) schema("tool_version is empty");
    if (!lower_hex(r.content_digest) || r.content_digest.size() != 64) schema("content_digest is not a SHA-256 hex digest");
    const auto ip = ioc::validate_ipv4(r.ioc_canonical);
    if (!ip || ip->canonical() != r.ioc_canonical) schema("ioc_canonical is not a canonical dotted quad");
    js::insertion_kind_from_string(r.ioc_location);
    if (r.encoding != ph.encoding()) schema("encoding " + r.encoding + " does not match " + ctx);

    const bool xor_enc = r.encoding == "xor";
    const bool aes_enc = r.encoding == "aes-256-cbc";
    require(r.key_hex.has_value(), xor_enc || aes_enc, "key_hex", r.encoding);
    require(r.ciphertext_hex.has_value(), xor_enc || aes_enc, "ciphertext_hex", r.encoding);
    require(r.iv_hex.has_value(), aes_enc, "iv_hex", r.encoding);
    check_hex(r.key_hex, "key_hex");
    check_hex(r.iv_hex, "iv_hex");
    check_hex(r.ciphertext_hex, "ciphertext_hex");

    const auto& p = r.params;
    if (p.seed != r.seed) schema("params.seed differs from seed");
    if (p.insertion_point_kind != r.ioc_location) schema("params.insertion_point_kind differs from ioc_location");
    require(p.xor_key.has_value(), ph.has(Component::Xor), "params.xor_key", ctx);
    require(p.aes_key.has_value(), ph.has(Component::Aes), "params.aes_key", ctx);
    require(p.aes_iv.has_value(), ph.has(Component::Aes), "params.aes_iv", ctx);
    require(p.dead_code.has_value(), ph.has(Component::DeadCode), "params.dead_code_template_ids", ctx);
    require(p.structural.has_value(), ph.has(Component::Structural), "params.structural", ctx);
    require(p.rename.has_value(), ph.renames(), "params.rename", ctx);
    check_hex(p.xor_key, "params.xor_key");
    check_hex(p.aes_key, "params.aes_key");
    check_hex(p.aes_iv, "params.aes_iv");
    if (p.xor_key && p.xor_key != r.key_hex) schema("params.xor_key differs from key_hex");
    if (p.aes_key && p.aes_key != r.key_hex) schema("params.aes_key differs from key_hex");
    if (p.aes_iv && p.aes_iv != r.iv_hex) schema("params.aes_iv differs from iv_hex");
    if (aes_enc && (r.key_hex->size() != 64 || r.iv_hex->size() != 32)) schema("AES key or IV has the wrong length");
    if (p.rename && p.rename->renamed != p.rename->map.size()) schema("params.rename.renamed differs from map size");
}

json record_to_json(const VariantRecord& r) {
    json j = {{"original_filename", r.original_filename},
              {"phase", r.phase},
              {"params", params_to_json(r.params)},
              {"ioc_canonical", r.ioc_canonical},
              {"ioc_location", r.ioc_location},
              {"encoding", r.encoding},
              {"seed", r.seed},
              {"tool_version", r.tool_version},
              {"content_digest", r.content_digest}};
    if (r.key_hex) j["key_hex"] = *r.key_hex;
    if (r.iv_hex) j["iv_hex"] = *r.iv_hex;
    if (r.ciphertext_hex) j["ciphertext_hex"] = *r.ciphertext_hex;
    return j;
}

VariantRecord record_from_json(const json& j) {
    if (!j.is_object()) schema("record is not an object");
    std::vector<std::string> keys = {"original_filename", "phase",    "params", "ioc_canonical", "ioc_location",
                                     "encoding",          "seed",     "tool_version", "content_digest"};
    VariantRecord r;
    r.original_filename = get_string(j, "original_filename");
    r.phase = get_string(j, "phase");
    if (!j.contains("params")) schema("record lacks params");
    r.params = params_from_json(j["params"]);
    r.ioc_canonical = get_string(j, "ioc_canonical");
    r.ioc_location = get_string(j, "ioc_location");
    r.encoding = get_string(j, "encoding");
    r.seed = get_u64(j, "seed");
    r.tool_version = get_string(j, "tool_version");
    r.content_digest = get_string(j, "content_digest");
    r.key_hex = optional_hex(j, "key_hex", keys);
    r.iv_hex = optional_hex(j, "iv_hex", keys);
    r.ciphertext_hex = optional_hex(j, "ciphertext_hex", keys);
    expect_keys(j, keys, "record");
    validate_record(r);
    return r;
}

void write_record(const VariantRecord& record, const std::filesystem::path& path) {
    validate_record(record);
    write_file(path, record_to_json(record).dump(2) + "\n");
}

VariantRecord read_record(const std::filesystem::path& path) {
    return record_from_json(parse_json(read_file(path), path.string()));
}

}  // namespace iocbench::groundtruth
