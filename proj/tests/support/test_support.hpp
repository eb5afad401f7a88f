#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gapwalk/acceptability.hpp"
#include "gapwalk/accumulation.hpp"
#include "gapwalk/engine.hpp"
#include "gapwalk/graph.hpp"

namespace gapwalk::testing {

std::filesystem::path fixture_path(std::string_view name);
std::shared_ptr<const TypedGraph> load_fixture_graph(std::string_view name);

/// Solutions sorted by traversal, for set comparisons.
std::vector<TraversalState<Accumulation>> sorted(std::vector<TraversalState<Accumulation>> states);

/// Explicit candidate lists per node. Test-only provider with no index.
class ListDomain final : public DomainProvider {
 public:
  explicit ListDomain(std::vector<std::vector<NodeIndex>> lists) : lists_(std::move(lists)) {}

 protected:
  std::vector<NodeIndex> collect(const TypedGraph&, NodeIndex n) const override {
    return n < lists_.size() ? lists_[n] : std::vector<NodeIndex>{};
  }

 private:
  std::vector<std::vector<NodeIndex>> lists_;
};

struct RandomGraphOptions {
  std::size_t min_nodes = 2;
  std::size_t max_nodes = 12;
  std::size_t max_edges = 20;
  std::size_t zone_size = 6;  // nodes per zone, bounds scope domains
  double extent_m = 100.0;
};

/// Nodes "n00".. with zone, color, ports and coordinates; edges carry an
/// integer weight "w" in [1, 9].
TypedGraph random_graph(std::mt19937& rng, const RandomGraphOptions& options = {});

/// Everything that defines a random threshold search except the budget, so
/// the same case can be replayed under several budgets.
struct RandomCase {
  std::shared_ptr<const TypedGraph> graph;
  NodeIndex start = 0;
  DomainPtr domain;
  PredicatePtr predicate;
  std::vector<NodeIndex> targets;
  std::size_t depth = 0;       // prune when hops > depth
  std::size_t max_gaps = 0;    // prune when gaps > max_gaps
  double gap_cost = 0.0;
  double budget = 0.0;         // prune when cost > budget
  std::string description;
};

struct RandomCaseOptions {
  RandomGraphOptions graph;
  std::size_t max_domain = 5;
  std::size_t max_depth = 6;
};

RandomCase random_case(std::mt19937& rng, const RandomCaseOptions& options = {});

/// Dimensions cost, gaps, hops. Edges add "w", gaps add gap_cost.
SearchConfig<Accumulation> build_config(const RandomCase& c);
SearchConfig<Accumulation> build_config(const RandomCase& c, double budget);

/// Textbook Dijkstra over the "w" edge weights; nullopt for unreachable.
std::vector<std::optional<double>> dijkstra(const TypedGraph& g, NodeIndex source);

}  // namespace gapwalk::testing
