#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gapwalk/error.hpp"
#include "gapwalk/graph.hpp"

namespace gapwalk::detail {

using nlohmann::json;

/// Parses JSON text; syntax errors become kParseError with line and column.
json parse_json(std::string_view text);

[[noreturn]] inline void schema_error(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kSchemaError, field + ": " + why);
}

void require_object(const json& j, const std::string& field);
void require_known_keys(const json& j, const std::string& field,
                        std::initializer_list<std::string_view> allowed);
void check_format_version(const json& doc);

const json* optional_member(const json& j, std::string_view key);
std::string get_string(const json& j, std::string_view key, const std::string& field);
double get_number(const json& j, std::string_view key, const std::string& field);
std::size_t get_count(const json& j, std::string_view key, const std::string& field);
bool get_bool(const json& j, std::string_view key, const std::string& field);

PropertyValue property_from_json(const json& j, const std::string& field);
json property_to_json(const PropertyValue& value);

}  // namespace gapwalk::detail
