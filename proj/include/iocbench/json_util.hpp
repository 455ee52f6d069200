#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace iocbench {

/// Throws Error(SchemaError) unless j is an object with exactly these keys.
void expect_keys(const nlohmann::json& j, const std::vector<std::string>& keys, std::string_view what);

// Typed field access; Error(SchemaError) on a wrong type.
std::string get_string(const nlohmann::json& j, const char* key);
std::uint64_t get_u64(const nlohmann::json& j, const char* key);
std::int64_t get_i64(const nlohmann::json& j, const char* key);
bool get_bool(const nlohmann::json& j, const char* key);
double get_number(const nlohmann::json& j, const char* key);
std::vector<std::string> get_strings(const nlohmann::json& j, const char* key);

/// Parses text, mapping parse failures to Error(SchemaError).
nlohmann::json parse_json(std::string_view text, std::string_view what);

}  // namespace iocbench
