// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <tuple>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "gapwalk/analysis.hpp"
#include "gapwalk/estimate.hpp"
#include "gapwalk/io.hpp"
#include "gapwalk/oracle.hpp"
#include "gapwalk/scenarios.hpp"
#include "test_support.hpp"

using namespace gapwalk;
using gapwalk::testing::build_config;
using gapwalk::testing::fixture_path;
using gapwalk::testing::load_fixture_graph;
using gapwalk::testing::random_case;
using gapwalk::testing::sorted;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return format_number(std::round(v * 100.0) / 100.0); }

std::set<Traversal> traversal_set(const SolutionSet<Accumulation>& s) {
  std::set<Traversal> out;
  for (const auto& st : s.solutions) out.insert(st.traversal);
  return out;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937 rng(500);
  std::size_t solutions = 0;
  for (int round = 0; round < 500; ++round) {
    const auto c = random_case(rng);
    const auto cfg = build_config(c);
    const auto engine = sorted(search(cfg).solutions);
    const auto oracle =
        sorted(enumerate_solutions(OracleConfig<Accumulation>{cfg, std::min(c.depth, c.graph->node_count())}).solutions);
    if (engine != oracle) {
      return {false, "config " + std::to_string(round) + " differs: " + c.description};
    }
    solutions += engine.size();
  }
  const double elapsed = seconds_since(t0);
  return {elapsed < 60.0, "500 configs, " + std::to_string(solutions) + " solutions, " + fmt(elapsed) + " s (limit 60 s)"};
}

Outcome telco_scenario() {
  auto g = load_fixture_graph("telco_f1.json");
  const auto policy = load_policy(fixture_path("telco_f1_policy.json"));
  const auto cfg = make_search_config(policy, g, g->index_of("A"));
  const auto result = search(cfg);
  const auto oracle = enumerate_solutions(OracleConfig<Accumulation>{cfg, g->node_count() - 1});
  if (sorted(result.solutions) != sorted(oracle.solutions)) return {false, "engine and oracle disagree"};

  const Traversal expected{g->index_of("A"),
                           {{g->index_of("A"), g->index_of("B"), TransitionKind::kEdge},
                            {g->index_of("B"), g->index_of("C"), TransitionKind::kGap},
                            {g->index_of("C"), g->index_of("D"), TransitionKind::kEdge}}};
  if (result.solutions.size() != 1 || result.solutions[0].traversal != expected) {
    return {false, std::to_string(result.solutions.size()) + " solutions, expected exactly A->B~>C->D"};
  }
  const auto acc = TelcoAccumulation::from(result.solutions[0].accumulation);
  if (!(acc.gap_count == 1 && acc.total_attenuation_db == 7.0 && acc.total_attenuation_db <= 30.0 &&
        acc.amplifier_count <= 1)) {
    return {false, "accumulation off: " + format_number(acc.total_attenuation_db) + " dB, " +
                       std::to_string(acc.gap_count) + " gaps"};
  }
  const auto doc = nlohmann::json::parse(render_result(cfg, result, {}));
  std::vector<double> per_step;
  for (const auto& step : doc["solutions"][0]["transitions"]) {
    per_step.push_back(step["accumulation"]["total_attenuation_db"].get<double>());
  }
  if (per_step != std::vector<double>{3, 3, 7}) return {false, "per-step attenuation missing from the result document"};
  return {true, "1 solution A->B~>C->D, gap_count 1, 7 dB, 0 amplifiers, per-step attenuation 3/3/7 dB"};
}

Outcome datacenter_tiers() {
  auto g = load_fixture_graph("dc_tiers.json");
  const auto premium = search(datacenter_config(g, "srv", DatacenterPolicy::premium()));
  const auto standard = search(datacenter_config(g, "srv", DatacenterPolicy::standard()));
  return {!premium.solutions.empty() && standard.solutions.empty(),
          "premium " + std::to_string(premium.solutions.size()) + " solution(s), standard " +
              std::to_string(standard.solutions.size())};
}

Outcome non_dominance() {
  auto g = load_fixture_graph("dc_tradeoff.json");
  const auto result = search(datacenter_config(g, "srv", DatacenterPolicy::standard()));
  std::multiset<std::tuple<std::size_t, std::size_t, std::size_t>> accs;
  for (const auto& s : result.solutions) {
    const auto a = DatacenterAccumulation::from(s.accumulation);
    accs.insert({a.gap_count, a.racks_traversed, a.row_changes});
  }
  const std::multiset<std::tuple<std::size_t, std::size_t, std::size_t>> expected = {{0, 2, 1}, {1, 1, 0}};
  const auto filtered = dominance_filter(result);
  return {accs == expected && filtered.frontier.size() == 2 && filtered.dominated.empty(),
          std::to_string(result.solutions.size()) + " solutions, " + std::to_string(filtered.frontier.size()) +
              " non-dominated"};
}

Outcome sweep_shape() {
  const auto t0 = Clock::now();
  const std::vector<double> budgets = {20, 25, 30, 35};

  TelcoGeneratorParams params;
  params.seed = 42;
  params.sites = 6;
  auto generated = std::make_shared<const TypedGraph>(generate_telco(params));
  SweepSpec spec{budgets, all_odf_pairs(*generated), telco_budget_family(generated, TelcoPolicy{})};
  const auto result = sweep(spec);
  std::string fractions;
  bool monotone = true;
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    fractions += (b ? "/" : "") + fmt(result.connectivity_fraction(b));
    if (b > 0 && result.connectivity_fraction(b) < result.connectivity_fraction(b - 1)) monotone = false;
  }

  auto single = load_fixture_graph("telco_single_route.json");
  SweepSpec single_spec{budgets, {{single->index_of("A"), single->index_of("Z")}},
                        telco_budget_family(single, TelcoPolicy{})};
  const auto route = sweep(single_spec);
  std::vector<double> shape;
  for (std::size_t b = 0; b < budgets.size(); ++b) shape.push_back(route.connectivity_fraction(b));

  const double elapsed = seconds_since(t0);
  return {monotone && shape == std::vector<double>{0, 0, 1, 1} && elapsed < 30.0,
          "generated (" + std::to_string(spec.pairs.size()) + " pairs) " + fractions + ", 27 dB route " +
              fmt(shape[0]) + "/" + fmt(shape[1]) + "/" + fmt(shape[2]) + "/" + fmt(shape[3]) + ", " + fmt(elapsed) +
              " s (limit 30 s)"};
}

// Graphs of up to 1000 nodes, sigma pruning beyond L <= 4.
Outcome termination() {
  std::size_t runs = 0, capped = 0;
  std::mt19937 rng(1000);
  std::vector<std::shared_ptr<const TypedGraph>> graphs;
  TelcoGeneratorParams tp;
  tp.sites = 100;
  tp.odfs_per_site = 6;
  tp.splice_boxes_per_site = 3;
  graphs.push_back(std::make_shared<const TypedGraph>(generate_telco(tp)));
  gapwalk::testing::RandomGraphOptions ro;
  ro.min_nodes = 1000;
  ro.max_nodes = 1000;
  ro.max_edges = 3000;
  ro.extent_m = 1000.0;
  graphs.push_back(std::make_shared<const TypedGraph>(gapwalk::testing::random_graph(rng, ro)));

  for (const auto& g : graphs) {
    if (g->node_count() > 1000) return {false, "test graph exceeds 1000 nodes"};
    std::vector<DomainPtr> domains = {std::make_shared<EmptyDomain>()};
    if (coordinates_property(g->node_properties(0), kCoordinatesKey)) {
      bool all = true;
      for (NodeIndex n = 0; n < g->node_count(); ++n) {
        all = all && coordinates_property(g->node_properties(n), kCoordinatesKey).has_value();
      }
      if (all) domains.push_back(std::make_shared<SpatialDomain>(g, 60.0));
    }
    for (std::size_t L = 1; L <= 4; ++L) {
      for (const auto& domain : domains) {
        for (int k = 0; k < 5; ++k) {
          SearchConfig<Accumulation> cfg;
          cfg.graph = g;
          cfg.start = std::uniform_int_distribution<NodeIndex>(0, static_cast<NodeIndex>(g->node_count() - 1))(rng);
          cfg.domain = domain;
          cfg.accumulator.step = [](const TypedGraph&, const Accumulation& a, const Traversal&) { return a; };
          cfg.sigma = [L](const TypedGraph&, const Traversal& t, const Accumulation&) {
            if (t.length() > L) return Decision::kPrune;
            return t.length() == L ? Decision::kTerminate : Decision::kContinue;
          };
          const auto result = search(cfg);
          ++runs;
          if (result.safety_cap_exceeded) ++capped;
        }
      }
    }
  }

  // No horizon: every node within reach on a dense graph, never pruned.
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < 14; ++i) nodes.push_back({"k" + std::to_string(i), {}});
  for (const auto& a : nodes) {
    for (const auto& b : nodes) {
      if (a.id != b.id) edges.push_back({a.id, b.id, {}});
    }
  }
  SearchConfig<Accumulation> open;
  open.graph = std::make_shared<const TypedGraph>(build_graph(nodes, edges));
  open.accumulator.step = [](const TypedGraph&, const Accumulation& a, const Traversal&) { return a; };
  open.sigma = [](const TypedGraph&, const Traversal&, const Accumulation&) { return Decision::kContinue; };
  // Depth-first keeps the frontier small while the cap counts expansions.
  open.frontier = FrontierPolicy<Accumulation>::lifo();
  const auto t0 = Clock::now();
  const auto horizonless = search(open);
  return {capped == 0 && horizonless.safety_cap_exceeded,
          std::to_string(runs) + " bounded searches, " + std::to_string(capped) +
              " capped; horizonless search flagged after " + std::to_string(horizonless.stats.states_expanded) +
              " expansions in " + fmt(seconds_since(t0)) + " s"};
}

Outcome dijkstra_reduction() {
  std::mt19937 rng(200);
  std::size_t compared = 0;
  for (int round = 0; round < 200; ++round) {
    gapwalk::testing::RandomGraphOptions ro;
    ro.max_edges = 30;
    auto g = std::make_shared<const TypedGraph>(gapwalk::testing::random_graph(rng, ro));
    SearchConfig<Accumulation> cfg;
    cfg.graph = g;
    cfg.start = std::uniform_int_distribution<NodeIndex>(0, static_cast<NodeIndex>(g->node_count() - 1))(rng);
    cfg.accumulator.initial.add_dimension("w");
    cfg.accumulator.step = [](const TypedGraph& graph, const Accumulation& prev, const Traversal& t) {
      Accumulation next = prev;
      next.add("w", *number_property(*graph.edge_properties(t.steps.back().from, t.steps.back().to), "w"));
      return next;
    };
    cfg.sigma = [](const TypedGraph&, const Traversal& t, const Accumulation& a) {
      if (a.get("w") > 1e9) return Decision::kPrune;
      return t.length() > 0 ? Decision::kTerminate : Decision::kContinue;
    };
    cfg.frontier = FrontierPolicy<Accumulation>::priority([](const Accumulation& a) { return a.get("w"); });
    std::map<NodeIndex, double> best;
    for (const auto& s : search(cfg).solutions) {
      const NodeIndex end = s.traversal.current_node();
      const double w = s.accumulation.get("w");
      if (!best.contains(end) || w < best[end]) best[end] = w;
    }
    const auto dist = gapwalk::testing::dijkstra(*g, cfg.start);
    for (NodeIndex n = 0; n < g->node_count(); ++n) {
      if (n == cfg.start) continue;
      const bool engine_has = best.contains(n);
      if (engine_has != dist[n].has_value() || (engine_has && best[n] != *dist[n])) {
        return {false, "graph " + std::to_string(round) + " node " + g->id(n) + " disagrees"};
      }
      ++compared;
    }
  }
  return {true, "200 graphs, " + std::to_string(compared) + " (source, node) distances equal"};
}

Outcome frontier_independence() {
  std::mt19937 rng(100);
  for (int round = 0; round < 100; ++round) {
    const auto c = random_case(rng);
    auto cfg = build_config(c);
    const auto fifo = sorted(search(cfg).solutions);
    cfg.frontier = FrontierPolicy<Accumulation>::lifo();
    const auto lifo = sorted(search(cfg).solutions);
    cfg.frontier = FrontierPolicy<Accumulation>::priority([](const Accumulation& a) { return a.get("cost"); });
    const auto priority = sorted(search(cfg).solutions);
    if (fifo != lifo || fifo != priority) return {false, "config " + std::to_string(round) + ": " + c.description};
  }
  return {true, "100 configs, FIFO/LIFO/Priority sets identical"};
}

Outcome policy_relaxation() {
  std::mt19937 rng(9);
  std::size_t pairs = 0;
  for (int round = 0; round < 100; ++round) {
    const auto c = random_case(rng);
    std::vector<std::set<Traversal>> sets;
    for (double budget : {0.0, 5.0, 10.0, 20.0, 40.0, 80.0}) sets.push_back(traversal_set(search(build_config(c, budget))));
    for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
      if (!std::includes(sets[i + 1].begin(), sets[i + 1].end(), sets[i].begin(), sets[i].end())) {
        return {false, "config " + std::to_string(round) + ": " + c.description};
      }
      ++pairs;
    }
  }
  // The telco attenuation budget is a threshold policy too.
  TelcoGeneratorParams tp;
  tp.sites = 4;
  auto g = std::make_shared<const TypedGraph>(generate_telco(tp));
  const auto family = telco_budget_family(g, TelcoPolicy{});
  for (const auto& [s, t] : all_odf_pairs(*g)) {
    const auto tight = traversal_set(search(family(s, t, 15)));
    const auto loose = traversal_set(search(family(s, t, 25)));
    if (!std::includes(loose.begin(), loose.end(), tight.begin(), tight.end())) return {false, "telco pair differs"};
    ++pairs;
  }
  return {true, std::to_string(pairs) + " budget pairs nested"};
}

Outcome estimator() {
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < 5; ++i) nodes.push_back({"n" + std::to_string(i), {}});
  for (int i = 0; i < 5; ++i) {
    edges.push_back({nodes[i].id, nodes[(i + 1) % 5].id, {}});
    edges.push_back({nodes[i].id, nodes[(i + 2) % 5].id, {}});
  }
  const auto from_graph = estimate_state_bound(build_graph(nodes, edges), 3, 2);
  const bool ok = from_graph.exact == "25" && from_graph.capped == 25 &&
                  estimate_state_bound(10, 5, 3, 2).exact == "25" && estimate_state_bound(10, 5, 3, 0).exact == "1" &&
                  estimate_state_bound(0, 5, 0, 5).exact == "0" && estimate_state_bound(3, 2, 1, 3).exact == "125/8";
  return {ok, "(10 edges, 5 nodes, b=3, L=2) -> " + from_graph.exact + "; L=0 -> 1; empty -> 0; (3/2+1)^3 -> 125/8"};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional argument: run only the criterion with this number.
  const std::size_t only = argc > 1 ? std::stoul(argv[1]) : 0;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"telco scenario", telco_scenario},
      {"datacenter tier contrast", datacenter_tiers},
      {"non-dominance", non_dominance},
      {"sweep monotonicity and shape", sweep_shape},
      {"termination", termination},
      {"dijkstra reduction", dijkstra_reduction},
      {"frontier-set independence", frontier_independence},
      {"policy relaxation", policy_relaxation},
      {"complexity estimator", estimator},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != i + 1) continue;
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.ok) ++failures;
    std::printf("[%s] %2zu %s: %s\n", outcome.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
