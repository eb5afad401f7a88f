#include <charconv>
#include <fstream>
#include <sstream>

#include "gapwalk/error.hpp"
#include "gapwalk/io.hpp"
#include "json_support.hpp"

namespace gapwalk {

using detail::json;

std::string format_number(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buffer, end);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing '" + path.string() + "'");
}

namespace {

PropertyBag read_properties(const json& owner, const std::string& field) {
  PropertyBag bag;
  const json* props = detail::optional_member(owner, "properties");
  if (props == nullptr) return bag;
  detail::require_object(*props, field + ".properties");
  for (const auto& [key, value] : props->items()) {
    bag.emplace(key, detail::property_from_json(value, field + ".properties." + key));
  }
  return bag;
}

json write_properties(const PropertyBag& bag) {
  json props = json::object();
  for (const auto& [key, value] : bag) props[key] = detail::property_to_json(value);
  return props;
}

}  // namespace

TypedGraph parse_topology(std::string_view text) {
  const json doc = detail::parse_json(text);
  detail::require_object(doc, "document");
  detail::require_known_keys(doc, "document", {"format_version", "description", "nodes", "links"});
  detail::check_format_version(doc);

  const json* nodes_json = detail::optional_member(doc, "nodes");
  if (nodes_json == nullptr || !nodes_json->is_array()) detail::schema_error("nodes", "expected an array");

  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < nodes_json->size(); ++i) {
    const json& n = (*nodes_json)[i];
    const std::string field = "nodes[" + std::to_string(i) + "]";
    detail::require_object(n, field);
    detail::require_known_keys(n, field, {"id", "type", "properties"});
    NodeSpec spec{detail::get_string(n, "id", field), read_properties(n, field)};
    if (detail::optional_member(n, "type") != nullptr) {
      if (spec.properties.contains(kNodeTypeKey)) {
        detail::schema_error(field + ".properties.node_type", "conflicts with the type field");
      }
      spec.properties.emplace(std::string(kNodeTypeKey), detail::get_string(n, "type", field));
    }
    nodes.push_back(std::move(spec));
  }

  std::vector<EdgeSpec> edges;
  if (const json* links = detail::optional_member(doc, "links")) {
    if (!links->is_array()) detail::schema_error("links", "expected an array");
    for (std::size_t i = 0; i < links->size(); ++i) {
      const json& l = (*links)[i];
      const std::string field = "links[" + std::to_string(i) + "]";
      detail::require_object(l, field);
      detail::require_known_keys(l, field, {"from", "to", "directed", "properties"});
      EdgeSpec spec{detail::get_string(l, "from", field), detail::get_string(l, "to", field),
                    read_properties(l, field)};
      const bool directed =
          detail::optional_member(l, "directed") != nullptr && detail::get_bool(l, "directed", field);
      if (!directed && spec.from != spec.to) edges.push_back({spec.to, spec.from, spec.properties});
      edges.push_back(std::move(spec));
    }
  }
  return build_graph(std::move(nodes), std::move(edges));
}

TypedGraph load_topology(const std::filesystem::path& path) { return parse_topology(read_text_file(path)); }

std::string serialize_topology(const TypedGraph& g) {
  json doc;
  doc["format_version"] = kFormatVersion;
  json nodes = json::array();
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    json node;
    node["id"] = g.id(n);
    PropertyBag props = g.node_properties(n);
    if (auto it = props.find(kNodeTypeKey); it != props.end() && std::holds_alternative<std::string>(it->second)) {
      node["type"] = std::get<std::string>(it->second);
      props.erase(it);
    }
    node["properties"] = write_properties(props);
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);

  json links = json::array();
  for (const auto& [from, to] : g.edges()) {
    const PropertyBag* forward = g.edge_properties(from, to);
    const PropertyBag* backward = g.edge_properties(to, from);
    const bool symmetric = from != to && backward != nullptr && *backward == *forward;
    if (symmetric && to < from) continue;  // emitted with its partner
    json link;
    link["from"] = g.id(from);
    link["to"] = g.id(to);
    link["directed"] = !symmetric;
    link["properties"] = write_properties(*forward);
    links.push_back(std::move(link));
  }
  doc["links"] = std::move(links);
  return doc.dump(2) + "\n";
}

}  // namespace gapwalk
