#include "gapwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gapwalk/error.hpp"

namespace gapwalk {

const PropertyValue* find_property(const PropertyBag& bag, std::string_view key) {
  auto it = bag.find(key);
  return it == bag.end() ? nullptr : &it->second;
}

std::optional<double> number_property(const PropertyBag& bag, std::string_view key) {
  const auto* value = find_property(bag, key);
  if (value == nullptr) return std::nullopt;
  if (const auto* q = std::get_if<Quantity>(value)) return q->value;
  return std::nullopt;
}

std::optional<std::string_view> string_property(const PropertyBag& bag,
                                                std::string_view key) {
  const auto* value = find_property(bag, key);
  if (value == nullptr) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(value)) return std::string_view(*s);
  return std::nullopt;
}

std::optional<bool> bool_property(const PropertyBag& bag, std::string_view key) {
  const auto* value = find_property(bag, key);
  if (value == nullptr) return std::nullopt;
  if (const auto* b = std::get_if<bool>(value)) return *b;
  return std::nullopt;
}

std::optional<Coordinates> coordinates_property(const PropertyBag& bag,
                                                std::string_view key) {
  const auto* value = find_property(bag, key);
  if (value == nullptr) return std::nullopt;
  if (const auto* c = std::get_if<Coordinates>(value)) return *c;
  return std::nullopt;
}

double euclidean_distance(const Coordinates& a, const Coordinates& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

std::optional<NodeIndex> TypedGraph::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids_.begin());
}

NodeIndex TypedGraph::index_of(std::string_view id) const {
  if (auto n = find(id)) return *n;
  throw Error(ErrorCode::kUnknownNode, "node '" + std::string(id) + "' is not in the graph");
}

std::vector<std::string> TypedGraph::out_neighbors(std::string_view id) const {
  std::vector<std::string> result;
  for (NodeIndex m : out_neighbors(index_of(id))) result.push_back(ids_[m]);
  return result;
}

bool TypedGraph::has_edge(NodeIndex from, NodeIndex to) const {
  return edge_properties(from, to) != nullptr;
}

const PropertyBag* TypedGraph::edge_properties(NodeIndex from, NodeIndex to) const {
  const auto& row = adjacency_.at(from);
  auto it = std::lower_bound(row.begin(), row.end(), to);
  if (it == row.end() || *it != to) return nullptr;
  return &edge_props_[from][static_cast<std::size_t>(it - row.begin())];
}

DegreeStats TypedGraph::degree_stats() const {
  if (ids_.empty()) throw Error(ErrorCode::kEmptyGraph, "degree statistics need at least one node");
  DegreeStats stats;
  const std::uint64_t divisor = std::gcd<std::uint64_t, std::uint64_t>(edge_count_, ids_.size());
  stats.avg_numerator = edge_count_ / divisor;
  stats.avg_denominator = ids_.size() / divisor;
  for (const auto& row : adjacency_) stats.max_out_degree = std::max(stats.max_out_degree, row.size());
  return stats;
}

std::vector<std::pair<NodeIndex, NodeIndex>> TypedGraph::edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> result;
  result.reserve(edge_count_);
  for (NodeIndex n = 0; n < adjacency_.size(); ++n) {
    for (NodeIndex m : adjacency_[n]) result.emplace_back(n, m);
  }
  return result;
}

TypedGraph build_graph(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges) {
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id) {
      throw Error(ErrorCode::kDuplicateNode, "node '" + nodes[i].id + "' is declared twice");
    }
  }

  TypedGraph g;
  g.ids_.reserve(nodes.size());
  g.node_props_.reserve(nodes.size());
  for (auto& node : nodes) {
    g.ids_.push_back(std::move(node.id));
    g.node_props_.push_back(std::move(node.properties));
  }

  struct Resolved {
    NodeIndex from;
    NodeIndex to;
    PropertyBag* properties;
  };
  std::vector<Resolved> resolved;
  resolved.reserve(edges.size());
  for (auto& edge : edges) {
    auto from = g.find(edge.from);
    auto to = g.find(edge.to);
    if (!from || !to) {
      throw Error(ErrorCode::kDanglingEdgeEndpoint,
                  "edge (" + edge.from + ", " + edge.to + ") references unknown node '" +
                      (!from ? edge.from : edge.to) + "'");
    }
    resolved.push_back({*from, *to, &edge.properties});
  }
  std::sort(resolved.begin(), resolved.end(), [](const Resolved& a, const Resolved& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });

  g.adjacency_.resize(g.ids_.size());
  g.edge_props_.resize(g.ids_.size());
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    const auto& e = resolved[i];
    if (i > 0 && resolved[i - 1].from == e.from && resolved[i - 1].to == e.to) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "edge (" + g.ids_[e.from] + ", " + g.ids_[e.to] + ") is declared twice");
    }
    g.adjacency_[e.from].push_back(e.to);
    g.edge_props_[e.from].push_back(std::move(*e.properties));
  }
  g.edge_count_ = resolved.size();
  return g;
}

}  // namespace gapwalk
