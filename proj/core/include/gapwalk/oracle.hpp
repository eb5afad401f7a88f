#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "gapwalk/engine.hpp"

namespace gapwalk {

/// Node count above which exhaustive enumeration is not advised.
inline constexpr std::size_t kOracleAdvisedNodes = 14;

inline bool oracle_size_advisory_exceeded(const TypedGraph& g) {
  return g.node_count() > kOracleAdvisedNodes;
}

template <AccumulationValue Acc>
struct OracleConfig {
  SearchConfig<Acc> search;  // frontier and safety cap are ignored
  std::size_t max_depth = 0;
};

namespace detail {

// Straight recursive enumeration of simple node sequences. Shares nothing with
// the frontier/expansion code of the engine: every node of the graph is tried
// as the next element, then the pair is classified from first principles.
template <AccumulationValue Acc>
class Enumerator {
 public:
  explicit Enumerator(const OracleConfig<Acc>& cfg)
      : cfg_(cfg), g_(*cfg.search.graph), domains_(g_.node_count()), domain_ready_(g_.node_count()) {}

  SolutionSet<Acc> run() {
    Traversal root{cfg_.search.start, {}};
    std::vector<bool> on_path(g_.node_count(), false);
    on_path[root.start] = true;
    visit(root, cfg_.search.accumulator.initial, on_path);
    return std::move(result_);
  }

 private:
  bool in_domain(NodeIndex n, NodeIndex m) {
    if (!domain_ready_[n]) {
      domains_[n] = cfg_.search.domain->candidates(g_, n);
      domain_ready_[n] = true;
    }
    return std::binary_search(domains_[n].begin(), domains_[n].end(), m);
  }

  void visit(Traversal& prefix, const Acc& acc, std::vector<bool>& on_path) {
    ++result_.stats.states_extracted;
    const Decision d = cfg_.search.sigma(g_, prefix, acc);
    if (d == Decision::kPrune) {
      ++result_.stats.states_pruned;
      return;
    }
    if (d == Decision::kTerminate) {
      ++result_.stats.states_terminated;
      result_.solutions.push_back({prefix, acc});
    }
    if (prefix.length() >= cfg_.max_depth) return;
    ++result_.stats.states_expanded;

    const NodeIndex n = prefix.current_node();
    for (NodeIndex m = 0; m < g_.node_count(); ++m) {
      if (on_path[m]) continue;
      TransitionKind kind;
      if (g_.has_edge(n, m)) {
        kind = TransitionKind::kEdge;
      } else if (in_domain(n, m) && cfg_.search.predicate->accepts(g_, n, m)) {
        kind = TransitionKind::kGap;
        ++result_.stats.gap_transitions_generated;
      } else {
        continue;
      }
      prefix.steps.push_back({n, m, kind});
      on_path[m] = true;
      const Acc next = cfg_.search.accumulator.step(g_, acc, prefix);
      visit(prefix, next, on_path);
      on_path[m] = false;
      prefix.steps.pop_back();
    }
  }

  const OracleConfig<Acc>& cfg_;
  const TypedGraph& g_;
  std::vector<std::vector<NodeIndex>> domains_;
  std::vector<bool> domain_ready_;
  SolutionSet<Acc> result_;
};

}  // namespace detail

/// Reference semantics of the search: every simple traversal up to
/// `max_depth` steps, with sigma applied to each prefix and a pruned prefix
/// removing all its extensions.
template <AccumulationValue Acc>
SolutionSet<Acc> enumerate_solutions(const OracleConfig<Acc>& cfg) {
  validate(cfg.search);
  if (cfg.max_depth > cfg.search.graph->node_count()) {
    throw Error(ErrorCode::kConfigError, "oracle depth limit exceeds the node count");
  }
  return detail::Enumerator<Acc>(cfg).run();
}

}  // namespace gapwalk
