#include "gapwalk/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "gapwalk/error.hpp"

namespace gapwalk {
namespace {

std::string_view node_type(const TypedGraph& g, NodeIndex n) {
  return string_property(g.node_properties(n), kNodeTypeKey).value_or("");
}

const PropertyValue& require_property(const TypedGraph& g, NodeIndex n, std::string_view key) {
  const auto* value = find_property(g.node_properties(n), key);
  if (value == nullptr) {
    throw Error(ErrorCode::kMissingProperty,
                "node '" + g.id(n) + "' has no '" + std::string(key) + "' property");
  }
  return *value;
}

double require_edge_number(const TypedGraph& g, NodeIndex from, NodeIndex to, std::string_view key) {
  const PropertyBag* props = g.edge_properties(from, to);
  auto value = props ? number_property(*props, key) : std::nullopt;
  if (!value) {
    throw Error(ErrorCode::kMissingProperty, "edge (" + g.id(from) + ", " + g.id(to) +
                                                 ") has no numeric '" + std::string(key) + "'");
  }
  return *value;
}

void check_limit(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kConfigError, std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

Accumulation telco_initial_accumulation() {
  Accumulation acc;
  acc.add_dimension(std::string(telco_dims::kLength), "m")
      .add_dimension(std::string(telco_dims::kAttenuation), "dB")
      .add_dimension(std::string(telco_dims::kGaps))
      .add_dimension(std::string(telco_dims::kAmplifiers));
  return acc;
}

TelcoAccumulation TelcoAccumulation::from(const Accumulation& acc) {
  return {acc.get(telco_dims::kLength), acc.get(telco_dims::kAttenuation),
          static_cast<std::size_t>(acc.get(telco_dims::kGaps)),
          static_cast<std::size_t>(acc.get(telco_dims::kAmplifiers))};
}

SearchConfig<Accumulation> telco_config(std::shared_ptr<const TypedGraph> g, NodeIndex start,
                                        const TelcoPolicy& policy) {
  if (!g) throw Error(ErrorCode::kConfigError, "telco config needs a graph");
  if (start >= g->node_count()) throw Error(ErrorCode::kUnknownNode, "start handle out of range");
  const NodeIndex target = g->index_of(policy.target);
  for (NodeIndex n : {start, target}) {
    if (node_type(*g, n) != node_types::kOdf) {
      throw Error(ErrorCode::kNotAnOdf, "node '" + g->id(n) + "' is not an ODF");
    }
  }
  check_limit(policy.max_gap_distance_m, "max_gap_distance_m");
  check_limit(policy.attenuation_budget_db, "attenuation_budget_db");
  check_limit(policy.gap_attenuation_db_per_km, "gap_attenuation_db_per_km");
  check_limit(policy.gap_connector_loss_db, "gap_connector_loss_db");

  SearchConfig<Accumulation> cfg;
  cfg.graph = g;
  cfg.start = start;
  cfg.domain = std::make_shared<ScopeDomain>(g, "site");
  cfg.predicate = std::make_shared<Conjunction>(std::vector<PredicatePtr>{
      std::make_shared<MaxDistance>(policy.max_gap_distance_m),
      std::make_shared<PropertyCompatible>("fiber_type", policy.fiber_compatibility)});

  const double per_km = policy.gap_attenuation_db_per_km;
  const double connector = policy.gap_connector_loss_db;
  cfg.accumulator.initial = telco_initial_accumulation();
  cfg.accumulator.step = [per_km, connector](const TypedGraph& graph, const Accumulation& prev,
                                             const Traversal& t) {
    Accumulation next = prev;
    const Transition& last = t.steps.back();
    if (last.kind == TransitionKind::kEdge) {
      next.add(telco_dims::kLength, require_edge_number(graph, last.from, last.to, "length_m"));
      next.add(telco_dims::kAttenuation,
               require_edge_number(graph, last.from, last.to, "attenuation_db"));
    } else {
      auto a = coordinates_property(graph.node_properties(last.from), kCoordinatesKey);
      auto b = coordinates_property(graph.node_properties(last.to), kCoordinatesKey);
      if (!a || !b) {
        throw Error(ErrorCode::kMissingCoordinates, "gap (" + graph.id(last.from) + ", " +
                                                        graph.id(last.to) + ") lacks coordinates");
      }
      const double length = euclidean_distance(*a, *b);
      next.add(telco_dims::kLength, length);
      next.add(telco_dims::kAttenuation, length / 1000.0 * per_km + connector);
      next.add(telco_dims::kGaps, 1);
    }
    if (node_type(graph, last.to) == node_types::kAmplifier) next.add(telco_dims::kAmplifiers, 1);
    return next;
  };

  const double budget = policy.attenuation_budget_db;
  const double max_gaps = static_cast<double>(policy.max_gaps);
  const double max_amplifiers = static_cast<double>(policy.max_amplifiers);
  cfg.sigma = [=](const TypedGraph&, const Traversal& t, const Accumulation& acc) {
    if (acc.get(telco_dims::kAttenuation) > budget || acc.get(telco_dims::kGaps) > max_gaps ||
        acc.get(telco_dims::kAmplifiers) > max_amplifiers) {
      return Decision::kPrune;
    }
    return t.current_node() == target ? Decision::kTerminate : Decision::kContinue;
  };
  cfg.frontier = FrontierPolicy<Accumulation>::fifo();
  return cfg;
}

SearchConfig<Accumulation> telco_config(std::shared_ptr<const TypedGraph> g, std::string_view start,
                                        const TelcoPolicy& policy) {
  if (!g) throw Error(ErrorCode::kConfigError, "telco config needs a graph");
  const NodeIndex s = g->index_of(start);
  return telco_config(std::move(g), s, policy);
}

DatacenterAccumulation DatacenterAccumulation::from(const Accumulation& acc) {
  return {static_cast<std::size_t>(acc.get(datacenter_dims::kGaps)),
          static_cast<std::size_t>(acc.get(datacenter_dims::kRacks)),
          static_cast<std::size_t>(acc.get(datacenter_dims::kRowChanges))};
}

SearchConfig<Accumulation> datacenter_config(std::shared_ptr<const TypedGraph> g, NodeIndex start,
                                             const DatacenterPolicy& policy) {
  if (!g) throw Error(ErrorCode::kConfigError, "datacenter config needs a graph");
  if (start >= g->node_count()) throw Error(ErrorCode::kUnknownNode, "start handle out of range");
  if (node_type(*g, start) != node_types::kServer) {
    throw Error(ErrorCode::kNotAServer, "node '" + g->id(start) + "' is not a server");
  }
  std::optional<NodeIndex> target;
  if (policy.target) target = g->index_of(*policy.target);
  require_property(*g, start, "rack");

  SearchConfig<Accumulation> cfg;
  cfg.graph = g;
  cfg.start = start;
  if (policy.gap_scope == GapScope::kSameRack) {
    cfg.domain = std::make_shared<CompositeDomain>(
        CompositeDomain::Mode::kIntersection,
        std::vector<DomainPtr>{
            std::make_shared<ScopeDomain>(g, "rack"),
            std::make_shared<PropertyInDomain>(
                g, std::string(kNodeTypeKey),
                std::set<std::string, std::less<>>{std::string(node_types::kPatchPanel)})});
  } else {
    cfg.domain = std::make_shared<ScopeDomain>(g, "room");
  }
  cfg.predicate = std::make_shared<HasAvailablePorts>();

  Accumulation initial;
  initial.add_dimension(std::string(datacenter_dims::kGaps))
      .add_dimension(std::string(datacenter_dims::kRacks), "", 1)
      .add_dimension(std::string(datacenter_dims::kRowChanges));
  cfg.accumulator.initial = initial;
  cfg.accumulator.step = [](const TypedGraph& graph, const Accumulation& prev, const Traversal& t) {
    Accumulation next = prev;
    const Transition& last = t.steps.back();
    if (last.kind == TransitionKind::kGap) next.add(datacenter_dims::kGaps, 1);
    if (require_property(graph, last.from, "row") != require_property(graph, last.to, "row")) {
      next.add(datacenter_dims::kRowChanges, 1);
    }
    const PropertyValue& rack = require_property(graph, last.to, "rack");
    bool seen = require_property(graph, t.start, "rack") == rack;
    for (std::size_t i = 0; !seen && i + 1 < t.steps.size(); ++i) {
      seen = require_property(graph, t.steps[i].to, "rack") == rack;
    }
    if (!seen) next.add(datacenter_dims::kRacks, 1);
    return next;
  };

  const double max_gaps = static_cast<double>(policy.max_gaps);
  const double max_rows = static_cast<double>(policy.max_row_changes);
  cfg.sigma = [=](const TypedGraph& graph, const Traversal& t, const Accumulation& acc) {
    if (acc.get(datacenter_dims::kGaps) > max_gaps ||
        acc.get(datacenter_dims::kRowChanges) > max_rows) {
      return Decision::kPrune;
    }
    const NodeIndex current = t.current_node();
    const bool upstream = bool_property(graph.node_properties(current), "upstream").value_or(false);
    if (upstream && (!target || *target == current)) return Decision::kTerminate;
    return Decision::kContinue;
  };
  cfg.frontier = FrontierPolicy<Accumulation>::fifo();
  return cfg;
}

SearchConfig<Accumulation> datacenter_config(std::shared_ptr<const TypedGraph> g,
                                             std::string_view start,
                                             const DatacenterPolicy& policy) {
  if (!g) throw Error(ErrorCode::kConfigError, "datacenter config needs a graph");
  const NodeIndex s = g->index_of(start);
  return datacenter_config(std::move(g), s, policy);
}

}  // namespace gapwalk
