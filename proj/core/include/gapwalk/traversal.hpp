#pragma once

#include <algorithm>
#include <set>
#include <string_view>
#include <vector>

#include "gapwalk/graph.hpp"

namespace gapwalk {

enum class TransitionKind { kEdge, kGap };

constexpr std::string_view to_string(TransitionKind kind) {
  return kind == TransitionKind::kEdge ? "edge" : "gap";
}

struct Transition {
  NodeIndex from = 0;
  NodeIndex to = 0;
  TransitionKind kind = TransitionKind::kEdge;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Contiguous sequence of transitions from `start`. Length 0 is valid.
struct Traversal {
  NodeIndex start = 0;
  std::vector<Transition> steps;

  std::size_t length() const { return steps.size(); }

  NodeIndex current_node() const { return steps.empty() ? start : steps.back().to; }

  // The start node counts as visited even when no step was taken yet.
  std::set<NodeIndex> visited_nodes() const {
    std::set<NodeIndex> nodes{start};
    for (const auto& s : steps) nodes.insert(s.to);
    return nodes;
  }

  bool visits(NodeIndex n) const {
    return n == start ||
           std::any_of(steps.begin(), steps.end(), [n](const Transition& t) { return t.to == n; });
  }

  std::size_t gap_count() const {
    return static_cast<std::size_t>(std::count_if(
        steps.begin(), steps.end(), [](const Transition& t) { return t.kind == TransitionKind::kGap; }));
  }

  friend bool operator==(const Traversal&, const Traversal&) = default;
  friend auto operator<=>(const Traversal&, const Traversal&) = default;
};

inline NodeIndex current_node(const Traversal& t) { return t.current_node(); }
inline std::set<NodeIndex> visited_nodes(const Traversal& t) { return t.visited_nodes(); }

}  // namespace gapwalk
