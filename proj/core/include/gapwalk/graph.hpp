#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gapwalk {

/// Numeric property value with an optional unit label ("m", "dB", ...).
struct Quantity {
  double value = 0.0;
  std::string unit;

  friend bool operator==(const Quantity&, const Quantity&) = default;
};

/// Planar position in meters.
struct Coordinates {
  double x_m = 0.0;
  double y_m = 0.0;

  friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

using PropertyValue = std::variant<std::string, Quantity, bool, Coordinates>;
using PropertyBag = std::map<std::string, PropertyValue, std::less<>>;

// Property keys shared by the scenario models and the topology format.
inline constexpr std::string_view kNodeTypeKey = "node_type";
inline constexpr std::string_view kCoordinatesKey = "coordinates";

const PropertyValue* find_property(const PropertyBag& bag, std::string_view key);
std::optional<double> number_property(const PropertyBag& bag, std::string_view key);
std::optional<std::string_view> string_property(const PropertyBag& bag,
                                                std::string_view key);
std::optional<bool> bool_property(const PropertyBag& bag, std::string_view key);
std::optional<Coordinates> coordinates_property(const PropertyBag& bag,
                                                std::string_view key);

double euclidean_distance(const Coordinates& a, const Coordinates& b);

/// Dense handle of a node inside one TypedGraph. Handles follow the sorted
/// order of node ids, so sorting by handle is sorting by id.
using NodeIndex = std::uint32_t;

struct NodeSpec {
  std::string id;
  PropertyBag properties;
};

struct EdgeSpec {
  std::string from;
  std::string to;
  PropertyBag properties;
};

struct DegreeStats {
  // Average out-degree |E|/|N| as a reduced fraction.
  std::uint64_t avg_numerator = 0;
  std::uint64_t avg_denominator = 1;
  std::size_t max_out_degree = 0;

  double average() const {
    return static_cast<double>(avg_numerator) / static_cast<double>(avg_denominator);
  }
  friend bool operator==(const DegreeStats&, const DegreeStats&) = default;
};

/// Immutable directed graph with property bags on nodes and edges. At most one
/// edge per ordered pair.
class TypedGraph {
 public:
  TypedGraph() = default;

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::string& id(NodeIndex n) const { return ids_.at(n); }
  std::optional<NodeIndex> find(std::string_view id) const;
  /// Throws Error(kUnknownNode).
  NodeIndex index_of(std::string_view id) const;

  const PropertyBag& node_properties(NodeIndex n) const { return node_props_.at(n); }

  /// Out-neighbors in ascending id order.
  std::span<const NodeIndex> out_neighbors(NodeIndex n) const { return adjacency_.at(n); }
  std::vector<std::string> out_neighbors(std::string_view id) const;

  bool has_edge(NodeIndex from, NodeIndex to) const;
  /// nullptr when (from, to) is not an edge.
  const PropertyBag* edge_properties(NodeIndex from, NodeIndex to) const;

  DegreeStats degree_stats() const;

  /// All edges in (from, to) handle order.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;

  friend bool operator==(const TypedGraph&, const TypedGraph&) = default;

 private:
  friend TypedGraph build_graph(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges);

  std::vector<std::string> ids_;
  std::vector<PropertyBag> node_props_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<std::vector<PropertyBag>> edge_props_;  // parallel to adjacency_
  std::size_t edge_count_ = 0;
};

/// Validates and freezes a graph. Throws Error with kDuplicateNode,
/// kDanglingEdgeEndpoint or kDuplicateEdge naming the offending id or pair.
TypedGraph build_graph(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges);

}  // namespace gapwalk
