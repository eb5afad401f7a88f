#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "gapwalk/graph.hpp"

namespace gapwalk {

/// (|E|/|N| + max_domain)^depth, evaluated exactly.
struct StateBound {
  static constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

  std::string exact;   // reduced "p" or "p/q"
  double approximate = 0.0;  // +inf when beyond double range
  // Ceiling of the bound, or kSaturated when it does not fit.
  std::uint64_t capped = 0;
  bool is_integer = true;
  bool saturated() const { return capped == kSaturated; }
};

StateBound estimate_state_bound(std::size_t edges, std::size_t nodes, std::uint64_t max_domain,
                                std::uint32_t depth);

/// Throws Error(kEmptyGraph) for a graph without nodes.
StateBound estimate_state_bound(const TypedGraph& g, std::uint64_t max_domain, std::uint32_t depth);

}  // namespace gapwalk
