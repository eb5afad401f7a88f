#include "gapwalk/acceptability.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "gapwalk/error.hpp"

namespace gapwalk {
namespace {

void check_node(const TypedGraph& g, NodeIndex n) {
  if (n >= g.node_count()) {
    throw Error(ErrorCode::kUnknownNode, "node handle " + std::to_string(n) + " is out of range");
  }
}

[[noreturn]] void missing(const TypedGraph& g, NodeIndex n, std::string_view key) {
  throw Error(ErrorCode::kMissingProperty,
              "node '" + g.id(n) + "' has no usable '" + std::string(key) + "' property");
}

}  // namespace

std::vector<NodeIndex> DomainProvider::candidates(const TypedGraph& g, NodeIndex n) const {
  check_node(g, n);
  auto result = collect(g, n);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  std::erase(result, n);
  return result;
}

std::vector<std::string> DomainProvider::candidates(const TypedGraph& g,
                                                    std::string_view id) const {
  std::vector<std::string> ids;
  for (NodeIndex m : candidates(g, g.index_of(id))) ids.push_back(g.id(m));
  return ids;
}

IndexedDomain::IndexedDomain(std::shared_ptr<const TypedGraph> graph) : graph_(std::move(graph)) {
  if (!graph_) throw Error(ErrorCode::kConfigError, "domain provider needs a graph");
}

void IndexedDomain::check_graph(const TypedGraph& g) const {
  if (&g != graph_.get()) {
    throw Error(ErrorCode::kConfigError, "domain provider was indexed over a different graph");
  }
}

ScopeDomain::ScopeDomain(std::shared_ptr<const TypedGraph> graph, std::string scope_key)
    : IndexedDomain(std::move(graph)), key_(std::move(scope_key)) {
  const auto& g = this->graph();
  group_of_.assign(g.node_count(), std::string::npos);
  std::vector<const PropertyValue*> representatives;
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    const auto* value = find_property(g.node_properties(n), key_);
    if (value == nullptr) continue;
    auto it = std::find_if(representatives.begin(), representatives.end(),
                           [&](const PropertyValue* r) { return *r == *value; });
    std::size_t group = static_cast<std::size_t>(it - representatives.begin());
    if (it == representatives.end()) {
      representatives.push_back(value);
      groups_.emplace_back();
    }
    group_of_[n] = group;
    groups_[group].push_back(n);
  }
}

std::vector<NodeIndex> ScopeDomain::collect(const TypedGraph& g, NodeIndex n) const {
  check_graph(g);
  if (group_of_[n] == std::string::npos) return {};
  return groups_[group_of_[n]];
}

PropertyInDomain::PropertyInDomain(std::shared_ptr<const TypedGraph> graph, std::string key,
                                   std::set<std::string, std::less<>> values)
    : IndexedDomain(std::move(graph)) {
  const auto& g = this->graph();
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    auto value = string_property(g.node_properties(n), key);
    if (value && values.contains(*value)) matches_.push_back(n);
  }
}

std::vector<NodeIndex> PropertyInDomain::collect(const TypedGraph& g, NodeIndex) const {
  check_graph(g);
  return matches_;
}

SpatialDomain::SpatialDomain(std::shared_ptr<const TypedGraph> graph, double radius_m,
                             std::string coordinates_key)
    : IndexedDomain(std::move(graph)), radius_m_(radius_m), key_(std::move(coordinates_key)) {
  if (!(radius_m_ > 0.0) || !std::isfinite(radius_m_)) {
    throw Error(ErrorCode::kConfigError, "spatial domain radius must be positive and finite");
  }
  const auto& g = this->graph();
  positions_.resize(g.node_count());
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    positions_[n] = coordinates_property(g.node_properties(n), key_);
    if (positions_[n]) cells_[cell_of(*positions_[n])].push_back(n);
  }
}

SpatialDomain::Cell SpatialDomain::cell_of(const Coordinates& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x_m / radius_m_)),
          static_cast<std::int64_t>(std::floor(p.y_m / radius_m_))};
}

std::vector<NodeIndex> SpatialDomain::collect(const TypedGraph& g, NodeIndex n) const {
  check_graph(g);
  const auto& origin = positions_[n];
  if (!origin) {
    throw Error(ErrorCode::kMissingCoordinates,
                "node '" + g.id(n) + "' has no '" + key_ + "' property");
  }
  const auto [cx, cy] = cell_of(*origin);
  std::vector<NodeIndex> result;
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      auto it = cells_.find({cx + dx, cy + dy});
      if (it == cells_.end()) continue;
      for (NodeIndex m : it->second) {
        if (euclidean_distance(*origin, *positions_[m]) <= radius_m_) result.push_back(m);
      }
    }
  }
  return result;
}

CompositeDomain::CompositeDomain(Mode mode, std::vector<DomainPtr> parts)
    : mode_(mode), parts_(std::move(parts)) {
  if (parts_.empty()) throw Error(ErrorCode::kConfigError, "composite domain needs at least one part");
  for (const auto& p : parts_) {
    if (!p) throw Error(ErrorCode::kConfigError, "composite domain part is null");
  }
}

std::vector<NodeIndex> CompositeDomain::collect(const TypedGraph& g, NodeIndex n) const {
  auto result = parts_.front()->candidates(g, n);
  for (std::size_t i = 1; i < parts_.size(); ++i) {
    if (mode_ == Mode::kIntersection && result.empty()) break;
    auto next = parts_[i]->candidates(g, n);
    std::vector<NodeIndex> merged;
    if (mode_ == Mode::kIntersection) {
      std::set_intersection(result.begin(), result.end(), next.begin(), next.end(),
                            std::back_inserter(merged));
    } else {
      std::set_union(result.begin(), result.end(), next.begin(), next.end(),
                     std::back_inserter(merged));
    }
    result = std::move(merged);
  }
  return result;
}

bool GapPredicate::accepts(const TypedGraph& g, NodeIndex n, NodeIndex m) const {
  check_node(g, n);
  check_node(g, m);
  if (n == m) {
    throw Error(ErrorCode::kConfigError, "acceptability of a self pair on '" + g.id(n) + "'");
  }
  return evaluate(g, n, m);
}

bool GapPredicate::accepts(const TypedGraph& g, std::string_view n, std::string_view m) const {
  return accepts(g, g.index_of(n), g.index_of(m));
}

bool MaxDistance::evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const {
  auto a = coordinates_property(g.node_properties(n), key_);
  if (!a) missing(g, n, key_);
  auto b = coordinates_property(g.node_properties(m), key_);
  if (!b) missing(g, m, key_);
  return euclidean_distance(*a, *b) < limit_m_;
}

bool PropertyEquals::evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const {
  const auto* a = find_property(g.node_properties(n), key_);
  if (a == nullptr) missing(g, n, key_);
  const auto* b = find_property(g.node_properties(m), key_);
  if (b == nullptr) missing(g, m, key_);
  return *a == *b;
}

PropertyCompatible::PropertyCompatible(std::string key,
                                       std::vector<std::pair<std::string, std::string>> table)
    : key_(std::move(key)) {
  for (auto& [a, b] : table) {
    compatible_.emplace(a, b);
    compatible_.emplace(std::move(b), std::move(a));
  }
}

bool PropertyCompatible::evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const {
  auto a = string_property(g.node_properties(n), key_);
  if (!a) missing(g, n, key_);
  auto b = string_property(g.node_properties(m), key_);
  if (!b) missing(g, m, key_);
  if (*a == *b) return true;
  return compatible_.contains(std::pair<std::string, std::string>(*a, *b));
}

bool HasAvailablePorts::evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const {
  auto a = number_property(g.node_properties(n), key_);
  if (!a) missing(g, n, key_);
  auto b = number_property(g.node_properties(m), key_);
  if (!b) missing(g, m, key_);
  return *a > 0 && *b > 0;
}

bool Conjunction::evaluate(const TypedGraph& g, NodeIndex n, NodeIndex m) const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [&](const PredicatePtr& p) { return p->accepts(g, n, m); });
}

}  // namespace gapwalk
