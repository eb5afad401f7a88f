#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gapwalk/acceptability.hpp"
#include "gapwalk/accumulation.hpp"
#include "gapwalk/error.hpp"
#include "gapwalk/graph.hpp"
#include "gapwalk/traversal.hpp"

namespace gapwalk {

/// Any copyable value with equality can serve as accumulation state.
template <class T>
concept AccumulationValue = std::copyable<T> && std::equality_comparable<T>;

enum class Decision { kContinue, kTerminate, kPrune };

/// Initial state plus step function. The step receives the previous state and
/// the traversal including the transition just taken.
template <AccumulationValue Acc>
struct Accumulator {
  Acc initial{};
  std::function<Acc(const TypedGraph&, const Acc&, const Traversal&)> step;
};

template <AccumulationValue Acc>
using ExplorationPredicate =
    std::function<Decision(const TypedGraph&, const Traversal&, const Acc&)>;

enum class FrontierKind { kFifo, kLifo, kPriority, kBeam };

template <AccumulationValue Acc>
struct FrontierPolicy {
  FrontierKind kind = FrontierKind::kFifo;
  // Lower keys are extracted first (priority) or kept first (beam).
  std::function<double(const Acc&)> key;
  std::size_t beam_width = 0;

  static FrontierPolicy fifo() { return {FrontierKind::kFifo, {}, 0}; }
  static FrontierPolicy lifo() { return {FrontierKind::kLifo, {}, 0}; }
  static FrontierPolicy priority(std::function<double(const Acc&)> k) {
    return {FrontierKind::kPriority, std::move(k), 0};
  }
  static FrontierPolicy beam(std::size_t width, std::function<double(const Acc&)> k) {
    return {FrontierKind::kBeam, std::move(k), width};
  }
};

template <AccumulationValue Acc>
struct TraversalState {
  Traversal traversal;
  Acc accumulation;

  friend bool operator==(const TraversalState&, const TraversalState&) = default;
};

inline constexpr std::size_t kDefaultSafetyCap = 1'000'000;

template <AccumulationValue Acc>
struct SearchConfig {
  std::shared_ptr<const TypedGraph> graph;
  NodeIndex start = 0;
  DomainPtr domain = std::make_shared<EmptyDomain>();
  PredicatePtr predicate = std::make_shared<AcceptAll>();
  Accumulator<Acc> accumulator;
  ExplorationPredicate<Acc> sigma;
  FrontierPolicy<Acc> frontier = FrontierPolicy<Acc>::fifo();
  // Maximum number of expanded states; nullopt disables the cap.
  std::optional<std::size_t> safety_cap = kDefaultSafetyCap;
};

struct SearchStats {
  std::size_t states_extracted = 0;
  std::size_t states_expanded = 0;
  std::size_t states_pruned = 0;
  std::size_t states_terminated = 0;
  std::size_t gap_transitions_generated = 0;
  std::size_t states_dropped_by_beam = 0;
};

template <AccumulationValue Acc>
struct SolutionSet {
  std::vector<TraversalState<Acc>> solutions;
  SearchStats stats;
  // Set when the cap stopped the search with states still queued; the
  // solutions collected so far are kept.
  bool safety_cap_exceeded = false;
};

template <AccumulationValue Acc>
void validate(const SearchConfig<Acc>& cfg) {
  auto fail = [](const char* what) { throw Error(ErrorCode::kConfigError, what); };
  if (!cfg.graph) fail("search config has no graph");
  if (cfg.start >= cfg.graph->node_count()) {
    throw Error(ErrorCode::kUnknownNode, "start handle " + std::to_string(cfg.start) + " is out of range");
  }
  if (!cfg.domain) fail("search config has no acceptability domain");
  if (!cfg.predicate) fail("search config has no acceptability predicate");
  if (!cfg.accumulator.step) fail("search config has no accumulation step");
  if (!cfg.sigma) fail("search config has no exploration predicate");
  const auto kind = cfg.frontier.kind;
  if ((kind == FrontierKind::kPriority || kind == FrontierKind::kBeam) && !cfg.frontier.key) {
    fail("priority and beam frontiers need a key");
  }
  if (kind == FrontierKind::kBeam && cfg.frontier.beam_width == 0) fail("beam width must be positive");
}

namespace detail {

template <AccumulationValue Acc>
class Frontier {
 public:
  Frontier(const FrontierPolicy<Acc>& policy, SearchStats& stats) : policy_(policy), stats_(stats) {}

  bool empty() const {
    switch (policy_.kind) {
      case FrontierKind::kFifo:
      case FrontierKind::kLifo:
        return sequence_.empty();
      case FrontierKind::kPriority:
        return heap_.empty();
      case FrontierKind::kBeam:
        return levels_.empty();
    }
    return true;
  }

  void push(TraversalState<Acc> state) {
    switch (policy_.kind) {
      case FrontierKind::kFifo:
      case FrontierKind::kLifo:
        sequence_.push_back(std::move(state));
        return;
      case FrontierKind::kPriority: {
        const double key = policy_.key(state.accumulation);
        heap_.push_back({key, next_seq_++, std::move(state)});
        std::push_heap(heap_.begin(), heap_.end(), worse);
        return;
      }
      case FrontierKind::kBeam: {
        const double key = policy_.key(state.accumulation);
        auto& level = levels_[state.traversal.length()];
        Entry entry{key, next_seq_++, std::move(state)};
        auto pos = std::upper_bound(level.begin(), level.end(), entry,
                                    [](const Entry& a, const Entry& b) { return better(a, b); });
        level.insert(pos, std::move(entry));
        if (level.size() > policy_.beam_width) {
          level.pop_back();
          ++stats_.states_dropped_by_beam;
        }
        return;
      }
    }
  }

  TraversalState<Acc> pop() {
    switch (policy_.kind) {
      case FrontierKind::kFifo: {
        auto state = std::move(sequence_.front());
        sequence_.pop_front();
        return state;
      }
      case FrontierKind::kLifo: {
        auto state = std::move(sequence_.back());
        sequence_.pop_back();
        return state;
      }
      case FrontierKind::kPriority: {
        std::pop_heap(heap_.begin(), heap_.end(), worse);
        auto state = std::move(heap_.back().state);
        heap_.pop_back();
        return state;
      }
      case FrontierKind::kBeam: {
        auto level = levels_.begin();
        auto state = std::move(level->second.front().state);
        level->second.pop_front();
        if (level->second.empty()) levels_.erase(level);
        return state;
      }
    }
    throw Error(ErrorCode::kConfigError, "unknown frontier kind");
  }

 private:
  struct Entry {
    double key;
    std::size_t seq;
    TraversalState<Acc> state;
  };
  // Strict order: smaller key first, then earlier insertion.
  static bool better(const Entry& a, const Entry& b) {
    return a.key < b.key || (a.key == b.key && a.seq < b.seq);
  }
  static bool worse(const Entry& a, const Entry& b) { return better(b, a); }

  const FrontierPolicy<Acc>& policy_;
  SearchStats& stats_;
  std::size_t next_seq_ = 0;
  std::deque<TraversalState<Acc>> sequence_;
  std::vector<Entry> heap_;
  std::map<std::size_t, std::deque<Entry>> levels_;  // depth -> best-first
};

template <AccumulationValue Acc>
TraversalState<Acc> extend(const SearchConfig<Acc>& cfg, const TraversalState<Acc>& s,
                           Transition t) {
  TraversalState<Acc> next{s.traversal, s.accumulation};
  next.traversal.steps.push_back(t);
  next.accumulation = cfg.accumulator.step(*cfg.graph, s.accumulation, next.traversal);
  return next;
}

template <AccumulationValue Acc>
bool admissible_gap(const SearchConfig<Acc>& cfg, NodeIndex n, NodeIndex m) {
  try {
    return cfg.predicate->accepts(*cfg.graph, n, m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kMissingProperty) throw;
    throw Error(ErrorCode::kMissingProperty, "gap candidate (" + cfg.graph->id(n) + ", " +
                                                 cfg.graph->id(m) + "): " + e.what());
  }
}

template <AccumulationValue Acc>
std::vector<TraversalState<Acc>> expand(const SearchConfig<Acc>& cfg, const TraversalState<Acc>& s,
                                        SearchStats* stats) {
  const TypedGraph& g = *cfg.graph;
  const NodeIndex n = s.traversal.current_node();
  std::vector<TraversalState<Acc>> successors;
  for (NodeIndex m : g.out_neighbors(n)) {
    if (s.traversal.visits(m)) continue;
    successors.push_back(extend(cfg, s, {n, m, TransitionKind::kEdge}));
  }
  for (NodeIndex m : cfg.domain->candidates(g, n)) {
    if (g.has_edge(n, m) || s.traversal.visits(m)) continue;
    if (!admissible_gap(cfg, n, m)) continue;
    successors.push_back(extend(cfg, s, {n, m, TransitionKind::kGap}));
    if (stats != nullptr) ++stats->gap_transitions_generated;
  }
  return successors;
}

}  // namespace detail

/// Successors of `s`: edge transitions in id order, then admissible gap
/// transitions in id order. Nodes already on the traversal are skipped.
template <AccumulationValue Acc>
std::vector<TraversalState<Acc>> expand(const SearchConfig<Acc>& cfg, const TraversalState<Acc>& s) {
  validate(cfg);
  return detail::expand(cfg, s, nullptr);
}

/// Frontier-driven traversal search. Every extracted state is judged by sigma:
/// pruned states are dropped with their subtree, terminated states are
/// recorded and still expanded, continued states are expanded.
template <AccumulationValue Acc>
SolutionSet<Acc> search(const SearchConfig<Acc>& cfg) {
  validate(cfg);
  SolutionSet<Acc> result;
  detail::Frontier<Acc> frontier(cfg.frontier, result.stats);
  frontier.push({Traversal{cfg.start, {}}, cfg.accumulator.initial});

  while (!frontier.empty()) {
    if (cfg.safety_cap && result.stats.states_expanded >= *cfg.safety_cap) {
      result.safety_cap_exceeded = true;
      break;
    }
    auto state = frontier.pop();
    ++result.stats.states_extracted;
    const Decision decision = cfg.sigma(*cfg.graph, state.traversal, state.accumulation);
    if (decision == Decision::kPrune) {
      ++result.stats.states_pruned;
      continue;
    }
    if (decision == Decision::kTerminate) {
      ++result.stats.states_terminated;
      result.solutions.push_back(state);
    }
    ++result.stats.states_expanded;
    for (auto& next : detail::expand(cfg, state, &result.stats)) frontier.push(std::move(next));
  }
  return result;
}

/// Folds the step function over every prefix of `t`, checking contiguity and
/// the classification of each transition. Throws Error(kInvalidTraversal).
template <AccumulationValue Acc>
Acc recompute_accumulation(const SearchConfig<Acc>& cfg, const Traversal& t) {
  validate(cfg);
  const TypedGraph& g = *cfg.graph;
  auto invalid = [&](std::size_t i, const std::string& why) {
    throw Error(ErrorCode::kInvalidTraversal, "step " + std::to_string(i) + ": " + why);
  };
  if (t.start >= g.node_count()) invalid(0, "start handle out of range");

  Acc acc = cfg.accumulator.initial;
  Traversal prefix{t.start, {}};
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Transition& step = t.steps[i];
    if (step.from != prefix.current_node()) invalid(i, "not contiguous with the previous step");
    if (step.to >= g.node_count()) invalid(i, "target handle out of range");
    const bool is_edge = g.has_edge(step.from, step.to);
    if (step.kind == TransitionKind::kEdge && !is_edge) {
      invalid(i, "(" + g.id(step.from) + ", " + g.id(step.to) + ") is tagged edge but is not in E");
    }
    if (step.kind == TransitionKind::kGap) {
      if (is_edge) invalid(i, "(" + g.id(step.from) + ", " + g.id(step.to) + ") is an edge, not a gap");
      const auto domain = cfg.domain->candidates(g, step.from);
      if (!std::binary_search(domain.begin(), domain.end(), step.to)) {
        invalid(i, g.id(step.to) + " is outside the acceptability domain of " + g.id(step.from));
      }
      if (!cfg.predicate->accepts(g, step.from, step.to)) {
        invalid(i, "gap (" + g.id(step.from) + ", " + g.id(step.to) + ") is not acceptable");
      }
    }
    prefix.steps.push_back(step);
    acc = cfg.accumulator.step(g, acc, prefix);
  }
  return acc;
}

extern template SolutionSet<Accumulation> search(const SearchConfig<Accumulation>&);
extern template Accumulation recompute_accumulation(const SearchConfig<Accumulation>&,
                                                    const Traversal&);

}  // namespace gapwalk
