#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gapwalk/accumulation.hpp"
#include "gapwalk/analysis.hpp"
#include "gapwalk/engine.hpp"
#include "gapwalk/graph.hpp"
#include "gapwalk/scenarios.hpp"

namespace gapwalk {

inline constexpr int kFormatVersion = 1;

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// ---------------------------------------------------------------------------
// Topology documents
// ---------------------------------------------------------------------------
//
//   { "format_version": 1,
//     "nodes": [ { "id": "A", "type": "odf",
//                  "properties": { "site": "S1", "coordinates": [0, 50] } } ],
//     "links": [ { "from": "A", "to": "B", "directed": false,
//                  "properties": { "length_m": { "value": 1200, "unit": "m" } } } ] }
//
// Property values: string, boolean, number, {"value", "unit"} quantity, or a
// two-element [x_m, y_m] array. Undirected links become two directed edges.

/// Throws kParseError (with line and column), kSchemaError (with the field
/// path) and the build_graph errors.
TypedGraph parse_topology(std::string_view text);
TypedGraph load_topology(const std::filesystem::path& path);

/// Canonical text: nodes in id order, symmetric edge pairs with equal
/// properties folded back into undirected links.
std::string serialize_topology(const TypedGraph& g);

// ---------------------------------------------------------------------------
// Policy documents
// ---------------------------------------------------------------------------

enum class ScenarioKind { kTelco, kDatacenter, kCustom };

struct DomainSpec {
  enum class Kind { kEmpty, kScope, kSpatial, kPropertyIn, kIntersection, kUnion };
  Kind kind = Kind::kEmpty;
  std::string key;
  double radius_m = 0.0;
  std::vector<std::string> values;
  std::vector<DomainSpec> parts;
};

struct PredicateSpec {
  enum class Kind { kAlways, kMaxDistance, kPropertyEquals, kPropertyCompatible, kHasAvailablePorts, kAll };
  Kind kind = Kind::kAlways;
  std::string key;
  double limit_m = 0.0;
  std::vector<std::pair<std::string, std::string>> compatible;
  std::vector<PredicateSpec> parts;
};

/// Contribution of one step: add + scale * base, where base is an edge
/// property, the endpoint distance, or zero.
struct StepTerm {
  std::optional<std::string> edge_property;
  bool distance = false;
  double scale = 1.0;
  double add = 0.0;
};

struct NodeBonus {
  std::string key;
  PropertyValue equals;
  double add = 0.0;
};

struct DimensionSpec {
  std::string name;
  std::string unit;
  double initial = 0.0;
  StepTerm per_edge;
  StepTerm per_gap;
  std::optional<NodeBonus> per_node;  // applied to the node entered
};

enum class CompareOp { kLess, kLessEqual, kGreater, kGreaterEqual, kEqual, kNotEqual };

struct RuleCondition {
  enum class Subject { kDimension, kLength, kNodeProperty, kAtTarget };
  Subject subject = Subject::kDimension;
  std::string name;  // dimension or node property key
  CompareOp op = CompareOp::kEqual;
  PropertyValue value;
};

struct CustomPolicy {
  DomainSpec domain;
  PredicateSpec predicate;
  std::vector<DimensionSpec> dimensions;
  std::vector<RuleCondition> prune_if;      // any holds -> prune
  std::vector<RuleCondition> terminate_if;  // all hold -> terminate
};

struct FrontierSpec {
  FrontierKind kind = FrontierKind::kFifo;
  std::optional<std::string> key;  // dimension name; first dimension if unset
  std::size_t beam_width = 8;
};

struct SweepSection {
  std::vector<double> budgets;
  std::vector<std::pair<std::string, std::string>> pairs;
  bool all_odf_pairs = false;
  // Custom scenarios: the dimension whose "> value" prune rule is swept.
  std::optional<std::string> dimension;
  std::size_t threads = 1;
};

struct PolicyDocument {
  ScenarioKind scenario = ScenarioKind::kTelco;
  TelcoPolicy telco;
  DatacenterPolicy datacenter;
  CustomPolicy custom;
  FrontierSpec frontier;
  std::optional<std::size_t> safety_cap;
  std::optional<SweepSection> sweep;
};

PolicyDocument parse_policy(std::string_view text);
PolicyDocument load_policy(const std::filesystem::path& path);

/// True when some prune rule bounds the traversal length: a length rule, or
/// a rule on a dimension that grows by a positive constant on every step.
bool has_prune_horizon(const CustomPolicy& policy);

/// Instantiates the policy for one search. `target` overrides the policy's
/// own target (telco), restricts termination (datacenter) or feeds the
/// at_target rule (custom). Throws kConfigError when a telco policy has no
/// target at all.
SearchConfig<Accumulation> make_search_config(const PolicyDocument& policy,
                                              std::shared_ptr<const TypedGraph> g, NodeIndex start,
                                              std::optional<NodeIndex> target = std::nullopt);

/// sigma_B family for the policy's sweep section.
BudgetedConfigFactory make_budget_family(const PolicyDocument& policy, std::shared_ptr<const TypedGraph> g);

/// Resolved (source, target) pairs of the sweep section.
std::vector<std::pair<NodeIndex, NodeIndex>> sweep_pairs(const SweepSection& sweep, const TypedGraph& g);

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

enum class ResultFormat { kJson, kCsv, kTable };

struct ResultOptions {
  ResultFormat format = ResultFormat::kJson;
  std::optional<std::size_t> max_solutions;  // truncates the report only
  std::optional<NodeIndex> target;
};

inline constexpr std::string_view kNoSolutionMessage = "no admissible traversal";

/// Every transition is listed with its kind and the accumulation after it.
std::string render_result(const SearchConfig<Accumulation>& cfg, const SolutionSet<Accumulation>& result,
                          const ResultOptions& options);

/// Reads back the traversals and final accumulations of a JSON result.
std::vector<TraversalState<Accumulation>> parse_result(std::string_view text, const TypedGraph& g);

/// Column order: budget, source, target, reachable, fraction.
std::string sweep_to_csv(const TypedGraph& g, const SweepResult& result);
std::string knee_report_table(const std::vector<KneePoint>& points);

}  // namespace gapwalk
