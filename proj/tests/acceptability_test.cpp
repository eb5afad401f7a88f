#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <random>

#include "gapwalk/acceptability.hpp"
#include "gapwalk/error.hpp"
#include "test_support.hpp"

using namespace gapwalk;
using gapwalk::testing::load_fixture_graph;

namespace {

std::shared_ptr<const TypedGraph> points(const std::vector<Coordinates>& coords) {
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    PropertyBag props;
    props[std::string(kCoordinatesKey)] = coords[i];
    nodes.push_back({"p" + std::to_string(100 + i), props});
  }
  return std::make_shared<const TypedGraph>(build_graph(std::move(nodes), {}));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no gapwalk::Error thrown";
  return ErrorCode::kIoError;
}

}  // namespace

TEST(Candidates, EmptyDomainHasNone) {
  auto g = load_fixture_graph("telco_f1.json");
  EXPECT_TRUE(EmptyDomain().candidates(*g, "B").empty());
}

TEST(Candidates, ScopeDomainMatchesSiteScan) {
  auto g = load_fixture_graph("telco_f1.json");
  ScopeDomain scope(g, "site");
  EXPECT_EQ(scope.candidates(*g, "B"), std::vector<std::string>{"C"});
  EXPECT_TRUE(scope.candidates(*g, "A").empty());
  EXPECT_EQ(code_of([&] { scope.candidates(*g, "nope"); }), ErrorCode::kUnknownNode);
}

TEST(Candidates, SpatialRadiusIsInclusive) {
  auto g = points({{0, 0}, {0, 50}, {0, 150}});
  SpatialDomain spatial(g, 100.0);
  EXPECT_EQ(spatial.candidates(*g, "p100"), std::vector<std::string>{"p101"});
  auto h = points({{0, 0}, {0, 100}});
  EXPECT_EQ(SpatialDomain(h, 100.0).candidates(*h, "p100"), std::vector<std::string>{"p101"});
}

TEST(Candidates, SpatialNeedsCoordinates) {
  PropertyBag located;
  located[std::string(kCoordinatesKey)] = Coordinates{0, 0};
  auto g = std::make_shared<const TypedGraph>(build_graph({{"A", {}}, {"B", located}}, {}));
  SpatialDomain spatial(g, 10.0);
  EXPECT_EQ(code_of([&] { spatial.candidates(*g, "A"); }), ErrorCode::kMissingCoordinates);
  EXPECT_TRUE(spatial.candidates(*g, "B").empty());
  EXPECT_EQ(code_of([&] { SpatialDomain(g, 0.0); }), ErrorCode::kConfigError);
}

TEST(Candidates, IndexedDomainRejectsOtherGraphs) {
  auto g = load_fixture_graph("telco_f1.json");
  auto other = load_fixture_graph("telco_f1.json");
  ScopeDomain scope(g, "site");
  EXPECT_EQ(code_of([&] { scope.candidates(*other, NodeIndex{0}); }), ErrorCode::kConfigError);
}

TEST(Candidates, PropertyInIgnoresTheQueryNode) {
  auto g = load_fixture_graph("dc_tiers.json");
  PropertyInDomain panels(g, "node_type", {"patch_panel"});
  EXPECT_EQ(panels.candidates(*g, "srv"), (std::vector<std::string>{"pp1", "pp2"}));
  EXPECT_EQ(panels.candidates(*g, "pp1"), std::vector<std::string>{"pp2"});
}

TEST(Accepts, MaxDistanceIsStrict) {
  auto g = points({{0, 0}, {0, 50}, {0, 100}});
  MaxDistance limit(100.0);
  EXPECT_TRUE(limit.accepts(*g, "p100", "p101"));
  EXPECT_FALSE(limit.accepts(*g, "p100", "p102"));
}

TEST(Accepts, PortsOnBothEnds) {
  auto g = load_fixture_graph("dc_tiers.json");
  HasAvailablePorts ports;
  EXPECT_TRUE(ports.accepts(*g, "pp1", "pp2"));
  EXPECT_FALSE(ports.accepts(*g, "pp1", "srv"));
  EXPECT_FALSE(ports.accepts(*g, "srv", "pp1"));
}

TEST(Accepts, CompatibilityTableIsSymmetric) {
  PropertyBag a, b, c;
  a["fiber_type"] = std::string("G.652");
  b["fiber_type"] = std::string("G.657");
  c["fiber_type"] = std::string("G.655");
  const TypedGraph g = build_graph({{"a", a}, {"b", b}, {"c", c}}, {});
  PropertyCompatible compat("fiber_type", {{"G.657", "G.652"}});
  EXPECT_TRUE(compat.accepts(g, "a", "b"));
  EXPECT_TRUE(compat.accepts(g, "b", "a"));
  EXPECT_FALSE(compat.accepts(g, "a", "c"));
  EXPECT_FALSE(PropertyEquals("fiber_type").accepts(g, "a", "b"));
}

TEST(Accepts, MissingPropertyAndSelfPair) {
  const TypedGraph g = build_graph({{"a", {}}, {"b", {}}}, {});
  EXPECT_EQ(code_of([&] { PropertyEquals("site").accepts(g, "a", "b"); }), ErrorCode::kMissingProperty);
  EXPECT_EQ(code_of([&] { AcceptAll().accepts(g, "a", "a"); }), ErrorCode::kConfigError);
}

TEST(Accepts, ConjunctionNeedsAll) {
  auto g = points({{0, 0}, {0, 50}});
  Conjunction both({std::make_shared<MaxDistance>(100.0), std::make_shared<MaxDistance>(10.0)});
  EXPECT_FALSE(both.accepts(*g, "p100", "p101"));
  EXPECT_TRUE(Conjunction({}).accepts(*g, "p100", "p101"));
}

// The grid is an index: it must agree with a linear scan.
TEST(SpatialProperty, MatchesBruteForceScan) {
  std::mt19937 rng(11);
  for (int round = 0; round < 150; ++round) {
    std::uniform_int_distribution<int> count(1, 60);
    std::uniform_real_distribution<double> coord(-500.0, 500.0);
    std::uniform_real_distribution<double> radius(1.0, 300.0);
    std::vector<Coordinates> pts;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      // Snap some points to a lattice so boundary distances occur exactly.
      if (i % 3 == 0) {
        pts.push_back({std::round(coord(rng) / 50.0) * 50.0, std::round(coord(rng) / 50.0) * 50.0});
      } else {
        pts.push_back({coord(rng), coord(rng)});
      }
    }
    const double r = round % 4 == 0 ? 50.0 : radius(rng);
    auto g = points(pts);
    SpatialDomain spatial(g, r);
    for (NodeIndex v = 0; v < g->node_count(); ++v) {
      std::vector<NodeIndex> expected;
      for (NodeIndex m = 0; m < g->node_count(); ++m) {
        if (m != v && std::hypot(pts[v].x_m - pts[m].x_m, pts[v].y_m - pts[m].y_m) <= r) expected.push_back(m);
      }
      ASSERT_EQ(spatial.candidates(*g, v), expected) << "round " << round << " node " << v << " radius " << r;
    }
  }
}

TEST(CompositeProperty, IntersectionAndUnionAreElementwise) {
  std::mt19937 rng(5);
  for (int round = 0; round < 100; ++round) {
    auto g = std::make_shared<const TypedGraph>(gapwalk::testing::random_graph(rng));
    auto p1 = std::make_shared<ScopeDomain>(g, "color");
    auto p2 = std::make_shared<SpatialDomain>(g, 45.0);
    CompositeDomain meet(CompositeDomain::Mode::kIntersection, {p1, p2});
    CompositeDomain join(CompositeDomain::Mode::kUnion, {p1, p2});
    for (NodeIndex v = 0; v < g->node_count(); ++v) {
      const auto a = p1->candidates(*g, v);
      const auto b = p2->candidates(*g, v);
      std::vector<NodeIndex> both, either;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(either));
      ASSERT_EQ(meet.candidates(*g, v), both);
      ASSERT_EQ(join.candidates(*g, v), either);
    }
  }
}
