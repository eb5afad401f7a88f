#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapwalk/accumulation.hpp"
#include "gapwalk/engine.hpp"
#include "gapwalk/scenarios.hpp"

namespace gapwalk {

// ---------------------------------------------------------------------------
// Dominance over accumulation dimensions (every dimension minimised).
// ---------------------------------------------------------------------------

struct DominanceRelation {
  // Dimensions compared; empty means every dimension of the first solution.
  std::vector<std::string> dimensions;
};

/// a <= b everywhere and a < b somewhere. Throws kDimensionMismatch.
bool dominates(const Accumulation& a, const Accumulation& b, const DominanceRelation& rel);

struct DominatedState {
  TraversalState<Accumulation> state;
  std::size_t dominator = 0;  // index into DominanceResult::frontier
};

struct DominanceResult {
  std::vector<TraversalState<Accumulation>> frontier;
  std::vector<DominatedState> dominated;
};

/// Splits solutions into non-dominated and dominated states, keeping input
/// order in both lists.
DominanceResult dominance_filter(const SolutionSet<Accumulation>& solutions,
                                 const DominanceRelation& rel = {});
DominanceResult dominance_filter(const std::vector<TraversalState<Accumulation>>& solutions,
                                 const DominanceRelation& rel = {});

// ---------------------------------------------------------------------------
// Budget sweeps.
// ---------------------------------------------------------------------------

/// Builds the search for one (source, target) pair under one budget. The
/// family must be threshold-prune in the budget: relaxing it can only add
/// solutions.
using BudgetedConfigFactory =
    std::function<SearchConfig<Accumulation>(NodeIndex source, NodeIndex target, double budget)>;

struct SweepSpec {
  std::vector<double> budgets;  // strictly increasing
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  BudgetedConfigFactory make_config;
  // Skip searches for pairs already reachable at a smaller budget.
  bool reuse_monotone = true;
  std::size_t threads = 1;
};

struct SweepCell {
  bool reachable = false;
  bool searched = false;
  std::size_t solution_count = 0;  // meaningful only when searched
};

struct SweepResult {
  std::vector<double> budgets;
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  std::vector<std::vector<SweepCell>> cells;  // [budget][pair]

  std::size_t reachable_pairs(std::size_t budget_index) const;
  double connectivity_fraction(std::size_t budget_index) const {
    return static_cast<double>(reachable_pairs(budget_index)) / static_cast<double>(pairs.size());
  }
};

/// Throws kEmptyPairSet, kConfigError (budgets not strictly increasing or a
/// non-monotone family), and search errors annotated with pair and budget.
SweepResult sweep(const SweepSpec& spec);

struct KneePoint {
  double budget = 0.0;
  double fraction = 0.0;
  std::optional<double> marginal_gain;  // none for the first budget
};

/// Throws kTooFewBudgets for fewer than two budgets.
std::vector<KneePoint> knee_report(const SweepResult& result);

/// sigma_B family over the telco parametrization: every policy field is fixed
/// except the attenuation budget and the target.
BudgetedConfigFactory telco_budget_family(std::shared_ptr<const TypedGraph> g, TelcoPolicy base);

/// Every ordered pair of distinct ODF nodes.
std::vector<std::pair<NodeIndex, NodeIndex>> all_odf_pairs(const TypedGraph& g);

}  // namespace gapwalk
