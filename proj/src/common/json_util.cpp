#include "iocbench/json_util.hpp"

#include "iocbench/error.hpp"

namespace iocbench {

namespace {

[[noreturn]] void bad(const char* key, const char* expected) {
    throw Error(ErrorCode::SchemaError, std::string("field ") + key + " must be " + expected);
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::SchemaError, std::string("missing field ") + key);
    }
    return j.at(key);
}

}  // namespace

void expect_keys(const nlohmann::json& j, const std::vector<std::string>& keys, std::string_view what) {
    if (!j.is_object()) throw Error(ErrorCode::SchemaError, std::string(what) + " is not an object");
    for (const auto& k : keys) {
        if (!j.contains(k)) throw Error(ErrorCode::SchemaError, std::string(what) + " lacks " + k);
    }
    if (j.size() != keys.size()) {
        for (const auto& [k, v] : j.items()) {
            bool known = false;
            for (const auto& want : keys) known = known || want == k;
            if (!known) throw Error(ErrorCode::SchemaError, std::string(what) + " has unknown field " + k);
        }
    }
}

std::string get_string(const nlohmann::json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_string()) bad(key, "a string");
    return v.get<std::string>();
}

std::uint64_t get_u64(const nlohmann::json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_unsigned()) bad(key, "a non-negative integer");
    return v.get<std::uint64_t>();
}

std::int64_t get_i64(const nlohmann::json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer()) bad(key, "an integer");
    return v.get<std::int64_t>();
}

bool get_bool(const nlohmann::json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_boolean()) bad(key, "a boolean");
    return v.get<bool>();
}

double get_number(const nlohmann::json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number()) bad(key, "a number");
    return v.get<double>();
}

std::vector<std::string> get_strings(const nlohmann::json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_array()) bad(key, "an array of strings");
    std::vector<std::string> out;
    for (const auto& s : v) {
        if (!s.is_string()) bad(key, "an array of strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

nlohmann::json parse_json(std::string_view text, std::string_view what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string(what) + ": invalid JSON: " + e.what());
    }
}

}  // namespace iocbench
