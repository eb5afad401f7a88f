#include "gapwalk/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "gapwalk/error.hpp"

namespace gapwalk {
namespace {

std::vector<std::string> resolve_dimensions(const std::vector<TraversalState<Accumulation>>& states,
                                            const DominanceRelation& rel) {
  if (!rel.dimensions.empty()) return rel.dimensions;
  std::vector<std::string> names;
  if (!states.empty()) {
    for (const auto& d : states.front().accumulation.dimensions()) names.push_back(d.name);
  }
  return names;
}

std::string budget_text(double budget) {
  std::ostringstream out;
  out << budget;
  return out.str();
}

}  // namespace

bool dominates(const Accumulation& a, const Accumulation& b, const DominanceRelation& rel) {
  std::vector<std::string> names = rel.dimensions;
  if (names.empty()) {
    for (const auto& d : a.dimensions()) names.push_back(d.name);
  }
  bool strictly_better = false;
  for (const auto& name : names) {
    const double x = a.get(name);
    const double y = b.get(name);
    if (x > y) return false;
    if (x < y) strictly_better = true;
  }
  return strictly_better;
}

DominanceResult dominance_filter(const std::vector<TraversalState<Accumulation>>& solutions,
                                 const DominanceRelation& rel) {
  const DominanceRelation resolved{resolve_dimensions(solutions, rel)};
  for (const auto& s : solutions) {
    for (const auto& name : resolved.dimensions) {
      if (!s.accumulation.has(name)) {
        throw Error(ErrorCode::kDimensionMismatch, "a solution lacks dimension '" + name + "'");
      }
    }
  }

  std::vector<bool> is_dominated(solutions.size(), false);
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    for (std::size_t j = 0; j < solutions.size() && !is_dominated[i]; ++j) {
      is_dominated[i] = i != j && dominates(solutions[j].accumulation, solutions[i].accumulation, resolved);
    }
  }

  DominanceResult result;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (!is_dominated[i]) result.frontier.push_back(solutions[i]);
  }
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (!is_dominated[i]) continue;
    // Dominance is a strict partial order on a finite set, so some frontier
    // member dominates every dominated state.
    auto it = std::find_if(result.frontier.begin(), result.frontier.end(), [&](const auto& f) {
      return dominates(f.accumulation, solutions[i].accumulation, resolved);
    });
    result.dominated.push_back({solutions[i], static_cast<std::size_t>(it - result.frontier.begin())});
  }
  return result;
}

DominanceResult dominance_filter(const SolutionSet<Accumulation>& solutions, const DominanceRelation& rel) {
  return dominance_filter(solutions.solutions, rel);
}

std::size_t SweepResult::reachable_pairs(std::size_t budget_index) const {
  const auto& row = cells.at(budget_index);
  return static_cast<std::size_t>(
      std::count_if(row.begin(), row.end(), [](const SweepCell& c) { return c.reachable; }));
}

SweepResult sweep(const SweepSpec& spec) {
  if (spec.pairs.empty()) throw Error(ErrorCode::kEmptyPairSet, "a sweep needs at least one pair");
  if (spec.budgets.empty()) throw Error(ErrorCode::kConfigError, "a sweep needs at least one budget");
  for (std::size_t i = 1; i < spec.budgets.size(); ++i) {
    if (!(spec.budgets[i] > spec.budgets[i - 1])) {
      throw Error(ErrorCode::kConfigError, "sweep budgets must be strictly increasing");
    }
  }
  if (!spec.make_config) throw Error(ErrorCode::kConfigError, "a sweep needs a config factory");

  SweepResult result;
  result.budgets = spec.budgets;
  result.pairs = spec.pairs;
  result.cells.assign(spec.budgets.size(), std::vector<SweepCell>(spec.pairs.size()));

  // One job per pair; each job writes only its own column.
  auto run_pair = [&](std::size_t p) {
    const auto [source, target] = spec.pairs[p];
    bool reachable = false;
    for (std::size_t b = 0; b < spec.budgets.size(); ++b) {
      SweepCell& cell = result.cells[b][p];
      if (reachable && spec.reuse_monotone) {
        cell.reachable = true;
        continue;
      }
      SolutionSet<Accumulation> found;
      try {
        found = search(spec.make_config(source, target, spec.budgets[b]));
      } catch (const Error& e) {
        throw Error(e.code(), "pair #" + std::to_string(p) + " at budget " + budget_text(spec.budgets[b]) +
                                  ": " + e.what());
      }
      if (found.safety_cap_exceeded && found.solutions.empty()) {
        throw Error(ErrorCode::kSafetyCapExceeded, "pair #" + std::to_string(p) + " at budget " +
                                                       budget_text(spec.budgets[b]) +
                                                       " hit the safety cap without a verdict");
      }
      cell.searched = true;
      cell.solution_count = found.solutions.size();
      cell.reachable = !found.solutions.empty();
      reachable = cell.reachable;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(spec.threads, 1, spec.pairs.size());
  if (workers == 1) {
    for (std::size_t p = 0; p < spec.pairs.size(); ++p) run_pair(p);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t p = next++; p < spec.pairs.size(); p = next++) {
          try {
            run_pair(p);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  for (std::size_t p = 0; p < spec.pairs.size(); ++p) {
    for (std::size_t b = 1; b < spec.budgets.size(); ++b) {
      if (result.cells[b - 1][p].reachable && !result.cells[b][p].reachable) {
        throw Error(ErrorCode::kConfigError, "budget family is not monotone for pair #" + std::to_string(p) +
                                                 " between budgets " + budget_text(spec.budgets[b - 1]) +
                                                 " and " + budget_text(spec.budgets[b]));
      }
    }
  }
  return result;
}

std::vector<KneePoint> knee_report(const SweepResult& result) {
  if (result.budgets.size() < 2) throw Error(ErrorCode::kTooFewBudgets, "a knee report needs two budgets");
  std::vector<KneePoint> points;
  for (std::size_t b = 0; b < result.budgets.size(); ++b) {
    KneePoint point{result.budgets[b], result.connectivity_fraction(b), std::nullopt};
    if (b > 0) point.marginal_gain = point.fraction - points.back().fraction;
    points.push_back(point);
  }
  return points;
}

BudgetedConfigFactory telco_budget_family(std::shared_ptr<const TypedGraph> g, TelcoPolicy base) {
  return [g = std::move(g), base = std::move(base)](NodeIndex source, NodeIndex target, double budget) {
    TelcoPolicy policy = base;
    policy.target = g->id(target);
    policy.attenuation_budget_db = budget;
    return telco_config(g, source, policy);
  };
}

std::vector<std::pair<NodeIndex, NodeIndex>> all_odf_pairs(const TypedGraph& g) {
  std::vector<NodeIndex> odfs;
  for (NodeIndex n = 0; n < g.node_count(); ++n) {
    if (string_property(g.node_properties(n), kNodeTypeKey) == node_types::kOdf) odfs.push_back(n);
  }
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  for (NodeIndex a : odfs) {
    for (NodeIndex b : odfs) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  return pairs;
}

}  // namespace gapwalk
