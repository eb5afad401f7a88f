#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "gapwalk/analysis.hpp"
#include "gapwalk/error.hpp"
#include "gapwalk/scenarios.hpp"
#include "test_support.hpp"

using namespace gapwalk;
using gapwalk::testing::load_fixture_graph;

namespace {

TraversalState<Accumulation> state(NodeIndex start, std::vector<double> values) {
  Accumulation a;
  const char* names[] = {"gaps", "racks", "rows"};
  for (std::size_t i = 0; i < values.size(); ++i) a.add_dimension(names[i], "", values[i]);
  return {Traversal{start, {}}, a};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

SweepSpec single_route_spec(std::vector<double> budgets) {
  auto g = load_fixture_graph("telco_single_route.json");
  SweepSpec spec;
  spec.budgets = std::move(budgets);
  spec.pairs = {{g->index_of("A"), g->index_of("Z")}};
  spec.make_config = telco_budget_family(g, TelcoPolicy{});
  return spec;
}

}  // namespace

TEST(Dominance, TradeOffPairIsIncomparable) {
  const auto r = dominance_filter(std::vector{state(0, {0, 2, 1}), state(1, {1, 1, 0})});
  EXPECT_EQ(r.frontier.size(), 2u);
  EXPECT_TRUE(r.dominated.empty());
}

TEST(Dominance, StrictDominationRecordsTheDominator) {
  const auto r = dominance_filter(std::vector{state(0, {1, 1, 1}), state(1, {0, 0, 0})});
  ASSERT_EQ(r.frontier.size(), 1u);
  EXPECT_EQ(r.frontier[0].traversal.start, 1u);
  ASSERT_EQ(r.dominated.size(), 1u);
  EXPECT_EQ(r.dominated[0].state.traversal.start, 0u);
  EXPECT_EQ(r.dominated[0].dominator, 0u);
}

TEST(Dominance, SingletonAndSelectedDimensions) {
  EXPECT_EQ(dominance_filter(std::vector{state(0, {3, 3, 3})}).frontier.size(), 1u);
  const auto r = dominance_filter(std::vector{state(0, {0, 2, 1}), state(1, {1, 1, 0})}, {{"gaps"}});
  EXPECT_EQ(r.frontier.size(), 1u);
  EXPECT_EQ(code_of([] { dominance_filter(std::vector{state(0, {0, 1, 2}), state(1, {0, 1})}); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { dominance_filter(std::vector{state(0, {0, 1, 1})}, {{"cost"}}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(DominanceProperty, IrreflexiveAntisymmetricAndPartitioning) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> value(0, 3);
  for (int round = 0; round < 200; ++round) {
    std::vector<TraversalState<Accumulation>> input;
    const int n = 1 + round % 9;
    for (int i = 0; i < n; ++i) {
      input.push_back(state(static_cast<NodeIndex>(i), {double(value(rng)), double(value(rng)), double(value(rng))}));
    }
    for (const auto& a : input) {
      ASSERT_FALSE(dominates(a.accumulation, a.accumulation, {}));
      for (const auto& b : input) {
        ASSERT_FALSE(dominates(a.accumulation, b.accumulation, {}) && dominates(b.accumulation, a.accumulation, {}));
      }
    }
    const auto r = dominance_filter(input);
    ASSERT_EQ(r.frontier.size() + r.dominated.size(), input.size());
    std::set<NodeIndex> seen;
    for (const auto& s : r.frontier) seen.insert(s.traversal.start);
    for (const auto& d : r.dominated) {
      seen.insert(d.state.traversal.start);
      ASSERT_TRUE(dominates(r.frontier.at(d.dominator).accumulation, d.state.accumulation, {}));
    }
    ASSERT_EQ(seen.size(), input.size());
    for (const auto& a : r.frontier) {
      for (const auto& b : input) ASSERT_FALSE(dominates(b.accumulation, a.accumulation, {}));
    }
  }
}

TEST(Sweep, SingleRouteOf27Db) {
  const auto result = sweep(single_route_spec({20, 25, 30, 35}));
  std::vector<double> fractions;
  for (std::size_t b = 0; b < result.budgets.size(); ++b) fractions.push_back(result.connectivity_fraction(b));
  EXPECT_EQ(fractions, (std::vector<double>{0, 0, 1, 1}));
  // The reachable pair is not searched again at 35 dB.
  EXPECT_TRUE(result.cells[2][0].searched);
  EXPECT_FALSE(result.cells[3][0].searched);
}

TEST(Sweep, BudgetBelowEveryEdge) {
  const auto result = sweep(single_route_spec({1}));
  EXPECT_EQ(result.connectivity_fraction(0), 0.0);
}

TEST(Sweep, Errors) {
  auto spec = single_route_spec({20, 25});
  spec.pairs.clear();
  EXPECT_EQ(code_of([&] { sweep(spec); }), ErrorCode::kEmptyPairSet);
  spec = single_route_spec({25, 20});
  EXPECT_EQ(code_of([&] { sweep(spec); }), ErrorCode::kConfigError);
  EXPECT_EQ(code_of([] { knee_report(sweep(single_route_spec({30}))); }), ErrorCode::kTooFewBudgets);
}

TEST(Sweep, SingleBudgetMatchesDirectSearch) {
  TelcoGeneratorParams params;
  params.sites = 3;
  auto g = std::make_shared<const TypedGraph>(generate_telco(params));
  TelcoPolicy base;
  SweepSpec spec;
  spec.budgets = {12};
  spec.pairs = all_odf_pairs(*g);
  spec.make_config = telco_budget_family(g, base);
  const auto result = sweep(spec);
  for (std::size_t p = 0; p < spec.pairs.size(); ++p) {
    const bool direct = !search(spec.make_config(spec.pairs[p].first, spec.pairs[p].second, 12)).solutions.empty();
    ASSERT_EQ(result.cells[0][p].reachable, direct);
  }
}

TEST(Sweep, ThreadsAndReuseDoNotChangeTheMatrix) {
  TelcoGeneratorParams params;
  params.sites = 4;
  params.seed = 3;
  auto g = std::make_shared<const TypedGraph>(generate_telco(params));
  SweepSpec spec;
  spec.budgets = {5, 10, 15, 20};
  spec.pairs = all_odf_pairs(*g);
  spec.make_config = telco_budget_family(g, TelcoPolicy{});
  const auto serial = sweep(spec);
  spec.threads = 4;
  spec.reuse_monotone = false;
  const auto parallel = sweep(spec);
  for (std::size_t b = 0; b < spec.budgets.size(); ++b) {
    for (std::size_t p = 0; p < spec.pairs.size(); ++p) {
      ASSERT_EQ(serial.cells[b][p].reachable, parallel.cells[b][p].reachable);
    }
    if (b > 0) ASSERT_GE(serial.connectivity_fraction(b), serial.connectivity_fraction(b - 1));
  }
}

TEST(Knee, MarginalGains) {
  const auto points = knee_report(sweep(single_route_spec({20, 25, 30, 35})));
  ASSERT_EQ(points.size(), 4u);
  EXPECT_FALSE(points[0].marginal_gain.has_value());
  EXPECT_EQ(*points[1].marginal_gain, 0.0);
  EXPECT_EQ(*points[2].marginal_gain, 1.0);
  EXPECT_EQ(*points[3].marginal_gain, 0.0);
}
