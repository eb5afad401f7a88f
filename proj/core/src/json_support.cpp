#include "json_support.hpp"

#include <algorithm>
#include <cmath>

namespace gapwalk::detail {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    const auto before = text.substr(0, offset);
    const std::size_t line = static_cast<std::size_t>(std::count(before.begin(), before.end(), '\n')) + 1;
    const std::size_t line_start = before.rfind('\n');
    const std::size_t column = line_start == std::string_view::npos ? offset + 1 : offset - line_start;
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
  }
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) schema_error(field, "expected an object");
}

void require_known_keys(const json& j, const std::string& field,
                        std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema_error(field + "." + key, "unknown field");
    }
  }
}

void check_format_version(const json& doc) {
  const json* v = optional_member(doc, "format_version");
  if (v == nullptr) schema_error("format_version", "missing");
  if (!v->is_number_integer() || v->get<long long>() != 1) {
    schema_error("format_version", "unsupported version (expected 1)");
  }
}

const json* optional_member(const json& j, std::string_view key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string get_string(const json& j, std::string_view key, const std::string& field) {
  const json* v = optional_member(j, key);
  if (v == nullptr) schema_error(field + "." + std::string(key), "missing");
  if (!v->is_string()) schema_error(field + "." + std::string(key), "expected a string");
  return v->get<std::string>();
}

double get_number(const json& j, std::string_view key, const std::string& field) {
  const json* v = optional_member(j, key);
  if (v == nullptr) schema_error(field + "." + std::string(key), "missing");
  if (!v->is_number()) schema_error(field + "." + std::string(key), "expected a number");
  return v->get<double>();
}

std::size_t get_count(const json& j, std::string_view key, const std::string& field) {
  const double value = get_number(j, key, field);
  if (value < 0 || value != std::floor(value)) {
    schema_error(field + "." + std::string(key), "expected a non-negative integer");
  }
  return static_cast<std::size_t>(value);
}

bool get_bool(const json& j, std::string_view key, const std::string& field) {
  const json* v = optional_member(j, key);
  if (v == nullptr) schema_error(field + "." + std::string(key), "missing");
  if (!v->is_boolean()) schema_error(field + "." + std::string(key), "expected a boolean");
  return v->get<bool>();
}

PropertyValue property_from_json(const json& j, const std::string& field) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return Quantity{j.get<double>(), {}};
  if (j.is_array()) {
    if (j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      schema_error(field, "coordinates must be [x_m, y_m]");
    }
    return Coordinates{j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object()) {
    require_known_keys(j, field, {"value", "unit"});
    Quantity q{get_number(j, "value", field), {}};
    if (optional_member(j, "unit") != nullptr) q.unit = get_string(j, "unit", field);
    return q;
  }
  schema_error(field, "unsupported property value");
}

json property_to_json(const PropertyValue& value) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Quantity>) {
          if (v.unit.empty()) return v.value;
          return json{{"value", v.value}, {"unit", v.unit}};
        } else if constexpr (std::is_same_v<T, Coordinates>) {
          return json::array({v.x_m, v.y_m});
        } else {
          return v;
        }
      },
      value);
}

}  // namespace gapwalk::detail
