#include <algorithm>
#include <cmath>

#include "gapwalk/error.hpp"
#include "gapwalk/io.hpp"
#include "json_support.hpp"

namespace gapwalk {

using detail::json;

namespace {

DomainSpec read_domain(const json& j, const std::string& field) {
  detail::require_object(j, field);
  const std::string kind = detail::get_string(j, "kind", field);
  DomainSpec spec;
  if (kind == "empty") {
    detail::require_known_keys(j, field, {"kind"});
    spec.kind = DomainSpec::Kind::kEmpty;
  } else if (kind == "scope") {
    detail::require_known_keys(j, field, {"kind", "key"});
    spec.kind = DomainSpec::Kind::kScope;
    spec.key = detail::get_string(j, "key", field);
  } else if (kind == "spatial") {
    detail::require_known_keys(j, field, {"kind", "radius_m"});
    spec.kind = DomainSpec::Kind::kSpatial;
    spec.radius_m = detail::get_number(j, "radius_m", field);
    if (!(spec.radius_m > 0)) detail::schema_error(field + ".radius_m", "must be positive");
  } else if (kind == "property_in") {
    detail::require_known_keys(j, field, {"kind", "key", "values"});
    spec.kind = DomainSpec::Kind::kPropertyIn;
    spec.key = detail::get_string(j, "key", field);
    const json* values = detail::optional_member(j, "values");
    if (values == nullptr || !values->is_array()) detail::schema_error(field + ".values", "expected an array");
    for (const auto& v : *values) {
      if (!v.is_string()) detail::schema_error(field + ".values", "expected strings");
      spec.values.push_back(v.get<std::string>());
    }
  } else if (kind == "intersection" || kind == "union") {
    detail::require_known_keys(j, field, {"kind", "of"});
    spec.kind = kind == "union" ? DomainSpec::Kind::kUnion : DomainSpec::Kind::kIntersection;
    const json* parts = detail::optional_member(j, "of");
    if (parts == nullptr || !parts->is_array() || parts->empty()) {
      detail::schema_error(field + ".of", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < parts->size(); ++i) {
      spec.parts.push_back(read_domain((*parts)[i], field + ".of[" + std::to_string(i) + "]"));
    }
  } else {
    detail::schema_error(field + ".kind", "unknown domain kind '" + kind + "'");
  }
  return spec;
}

std::vector<std::pair<std::string, std::string>> read_pairs(const json& j, const std::string& field) {
  if (!j.is_array()) detail::schema_error(field, "expected an array of pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      detail::schema_error(field, "each entry must be a pair of strings");
    }
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return pairs;
}

PredicateSpec read_predicate(const json& j, const std::string& field) {
  detail::require_object(j, field);
  const std::string kind = detail::get_string(j, "kind", field);
  PredicateSpec spec;
  if (kind == "always") {
    detail::require_known_keys(j, field, {"kind"});
    spec.kind = PredicateSpec::Kind::kAlways;
  } else if (kind == "max_distance") {
    detail::require_known_keys(j, field, {"kind", "limit_m"});
    spec.kind = PredicateSpec::Kind::kMaxDistance;
    spec.limit_m = detail::get_number(j, "limit_m", field);
  } else if (kind == "property_equals") {
    detail::require_known_keys(j, field, {"kind", "key"});
    spec.kind = PredicateSpec::Kind::kPropertyEquals;
    spec.key = detail::get_string(j, "key", field);
  } else if (kind == "property_compatible") {
    detail::require_known_keys(j, field, {"kind", "key", "pairs"});
    spec.kind = PredicateSpec::Kind::kPropertyCompatible;
    spec.key = detail::get_string(j, "key", field);
    if (const json* pairs = detail::optional_member(j, "pairs")) spec.compatible = read_pairs(*pairs, field + ".pairs");
  } else if (kind == "has_available_ports") {
    detail::require_known_keys(j, field, {"kind", "key"});
    spec.kind = PredicateSpec::Kind::kHasAvailablePorts;
    spec.key = detail::optional_member(j, "key") ? detail::get_string(j, "key", field)
                                                 : std::string(HasAvailablePorts::kDefaultKey);
  } else if (kind == "all") {
    detail::require_known_keys(j, field, {"kind", "of"});
    spec.kind = PredicateSpec::Kind::kAll;
    const json* parts = detail::optional_member(j, "of");
    if (parts == nullptr || !parts->is_array()) detail::schema_error(field + ".of", "expected an array");
    for (std::size_t i = 0; i < parts->size(); ++i) {
      spec.parts.push_back(read_predicate((*parts)[i], field + ".of[" + std::to_string(i) + "]"));
    }
  } else {
    detail::schema_error(field + ".kind", "unknown predicate kind '" + kind + "'");
  }
  return spec;
}

StepTerm read_term(const json& j, const std::string& field) {
  StepTerm term;
  if (j.is_number()) {
    term.add = j.get<double>();
    return term;
  }
  detail::require_object(j, field);
  detail::require_known_keys(j, field, {"edge_property", "distance", "scale", "add"});
  if (detail::optional_member(j, "edge_property")) term.edge_property = detail::get_string(j, "edge_property", field);
  if (detail::optional_member(j, "distance")) term.distance = detail::get_bool(j, "distance", field);
  if (term.edge_property && term.distance) detail::schema_error(field, "edge_property and distance are exclusive");
  if (detail::optional_member(j, "scale")) term.scale = detail::get_number(j, "scale", field);
  if (detail::optional_member(j, "add")) term.add = detail::get_number(j, "add", field);
  return term;
}

DimensionSpec read_dimension(const json& j, const std::string& field) {
  detail::require_object(j, field);
  detail::require_known_keys(j, field, {"name", "unit", "initial", "per_edge", "per_gap", "per_node"});
  DimensionSpec d;
  d.name = detail::get_string(j, "name", field);
  if (detail::optional_member(j, "unit")) d.unit = detail::get_string(j, "unit", field);
  if (detail::optional_member(j, "initial")) d.initial = detail::get_number(j, "initial", field);
  if (const json* t = detail::optional_member(j, "per_edge")) d.per_edge = read_term(*t, field + ".per_edge");
  if (const json* t = detail::optional_member(j, "per_gap")) {
    d.per_gap = read_term(*t, field + ".per_gap");
    if (d.per_gap.edge_property) detail::schema_error(field + ".per_gap", "gaps have no edge properties");
  }
  if (const json* n = detail::optional_member(j, "per_node")) {
    const std::string nf = field + ".per_node";
    detail::require_object(*n, nf);
    detail::require_known_keys(*n, nf, {"key", "equals", "add"});
    const json* equals = detail::optional_member(*n, "equals");
    if (equals == nullptr) detail::schema_error(nf + ".equals", "missing");
    d.per_node = NodeBonus{detail::get_string(*n, "key", nf), detail::property_from_json(*equals, nf + ".equals"),
                           detail::get_number(*n, "add", nf)};
  }
  return d;
}

CompareOp read_op(const json& j, const std::string& field) {
  const std::string op = detail::get_string(j, "op", field);
  if (op == "<") return CompareOp::kLess;
  if (op == "<=") return CompareOp::kLessEqual;
  if (op == ">") return CompareOp::kGreater;
  if (op == ">=") return CompareOp::kGreaterEqual;
  if (op == "==") return CompareOp::kEqual;
  if (op == "!=") return CompareOp::kNotEqual;
  detail::schema_error(field + ".op", "unknown operator '" + op + "'");
}

// Subjects: "dimension:<name>", "length", "node:<key>", "at_target".
RuleCondition read_condition(const json& j, const std::string& field) {
  detail::require_object(j, field);
  detail::require_known_keys(j, field, {"subject", "op", "value"});
  const std::string subject = detail::get_string(j, "subject", field);
  RuleCondition c;
  if (subject == "at_target") {
    c.subject = RuleCondition::Subject::kAtTarget;
    return c;
  }
  c.op = read_op(j, field);
  const json* value = detail::optional_member(j, "value");
  if (value == nullptr) detail::schema_error(field + ".value", "missing");
  c.value = detail::property_from_json(*value, field + ".value");
  const bool ordering = c.op != CompareOp::kEqual && c.op != CompareOp::kNotEqual;
  if (subject == "length") {
    c.subject = RuleCondition::Subject::kLength;
  } else if (subject.starts_with("dimension:")) {
    c.subject = RuleCondition::Subject::kDimension;
    c.name = subject.substr(10);
  } else if (subject.starts_with("node:")) {
    c.subject = RuleCondition::Subject::kNodeProperty;
    c.name = subject.substr(5);
  } else {
    detail::schema_error(field + ".subject", "unknown subject '" + subject + "'");
  }
  if (c.subject != RuleCondition::Subject::kNodeProperty || ordering) {
    if (!std::holds_alternative<Quantity>(c.value)) detail::schema_error(field + ".value", "expected a number");
  }
  return c;
}

std::vector<RuleCondition> read_conditions(const json& rules, std::string_view key, const std::string& field) {
  std::vector<RuleCondition> out;
  const json* list = detail::optional_member(rules, key);
  if (list == nullptr) return out;
  const std::string lf = field + "." + std::string(key);
  if (!list->is_array()) detail::schema_error(lf, "expected an array");
  for (std::size_t i = 0; i < list->size(); ++i) {
    out.push_back(read_condition((*list)[i], lf + "[" + std::to_string(i) + "]"));
  }
  return out;
}

CustomPolicy read_custom(const json& j) {
  const std::string field = "custom";
  detail::require_object(j, field);
  detail::require_known_keys(j, field, {"domain", "predicate", "accumulation", "rules"});
  CustomPolicy policy;
  if (const json* d = detail::optional_member(j, "domain")) policy.domain = read_domain(*d, field + ".domain");
  if (const json* p = detail::optional_member(j, "predicate")) policy.predicate = read_predicate(*p, field + ".predicate");
  const json* acc = detail::optional_member(j, "accumulation");
  if (acc == nullptr || !acc->is_array()) detail::schema_error(field + ".accumulation", "expected an array");
  for (std::size_t i = 0; i < acc->size(); ++i) {
    policy.dimensions.push_back(read_dimension((*acc)[i], field + ".accumulation[" + std::to_string(i) + "]"));
    for (std::size_t k = 0; k < i; ++k) {
      if (policy.dimensions[k].name == policy.dimensions[i].name) {
        detail::schema_error(field + ".accumulation[" + std::to_string(i) + "]", "repeated dimension name");
      }
    }
  }
  if (const json* rules = detail::optional_member(j, "rules")) {
    detail::require_object(*rules, field + ".rules");
    detail::require_known_keys(*rules, field + ".rules", {"prune_if", "terminate_if"});
    policy.prune_if = read_conditions(*rules, "prune_if", field + ".rules");
    policy.terminate_if = read_conditions(*rules, "terminate_if", field + ".rules");
  }
  auto known = [&](const std::string& name) {
    return std::any_of(policy.dimensions.begin(), policy.dimensions.end(),
                       [&](const DimensionSpec& d) { return d.name == name; });
  };
  for (const auto* list : {&policy.prune_if, &policy.terminate_if}) {
    for (const auto& c : *list) {
      if (c.subject == RuleCondition::Subject::kDimension && !known(c.name)) {
        detail::schema_error(field + ".rules", "rule uses undeclared dimension '" + c.name + "'");
      }
    }
  }
  return policy;
}

TelcoPolicy read_telco(const json& j) {
  const std::string f = "telco";
  detail::require_object(j, f);
  detail::require_known_keys(j, f, {"target", "max_gap_distance_m", "attenuation_budget_db", "max_gaps", "max_amplifiers",
                                    "gap_attenuation_db_per_km", "gap_connector_loss_db", "fiber_compatibility"});
  TelcoPolicy p;
  if (detail::optional_member(j, "target")) p.target = detail::get_string(j, "target", f);
  if (detail::optional_member(j, "max_gap_distance_m")) p.max_gap_distance_m = detail::get_number(j, "max_gap_distance_m", f);
  if (detail::optional_member(j, "attenuation_budget_db")) {
    p.attenuation_budget_db = detail::get_number(j, "attenuation_budget_db", f);
  }
  if (detail::optional_member(j, "max_gaps")) p.max_gaps = detail::get_count(j, "max_gaps", f);
  if (detail::optional_member(j, "max_amplifiers")) p.max_amplifiers = detail::get_count(j, "max_amplifiers", f);
  if (detail::optional_member(j, "gap_attenuation_db_per_km")) {
    p.gap_attenuation_db_per_km = detail::get_number(j, "gap_attenuation_db_per_km", f);
  }
  if (detail::optional_member(j, "gap_connector_loss_db")) {
    p.gap_connector_loss_db = detail::get_number(j, "gap_connector_loss_db", f);
  }
  if (const json* t = detail::optional_member(j, "fiber_compatibility")) {
    p.fiber_compatibility = read_pairs(*t, f + ".fiber_compatibility");
  }
  for (double v : {p.max_gap_distance_m, p.attenuation_budget_db, p.gap_attenuation_db_per_km, p.gap_connector_loss_db}) {
    if (!(v >= 0) || !std::isfinite(v)) detail::schema_error(f, "limits must be finite and >= 0");
  }
  return p;
}

DatacenterPolicy read_datacenter(const json& j) {
  const std::string f = "datacenter";
  detail::require_object(j, f);
  detail::require_known_keys(j, f, {"tier", "max_gaps", "max_row_changes", "gap_scope", "target"});
  DatacenterPolicy p = DatacenterPolicy::standard();
  if (detail::optional_member(j, "tier")) {
    const std::string tier = detail::get_string(j, "tier", f);
    if (tier == "premium") {
      p = DatacenterPolicy::premium();
    } else if (tier != "standard") {
      detail::schema_error(f + ".tier", "expected standard or premium");
    }
  }
  if (detail::optional_member(j, "max_gaps")) p.max_gaps = detail::get_count(j, "max_gaps", f);
  if (detail::optional_member(j, "max_row_changes")) p.max_row_changes = detail::get_count(j, "max_row_changes", f);
  if (detail::optional_member(j, "gap_scope")) {
    const std::string scope = detail::get_string(j, "gap_scope", f);
    if (scope == "same_rack") {
      p.gap_scope = GapScope::kSameRack;
    } else if (scope == "same_room") {
      p.gap_scope = GapScope::kSameRoom;
    } else {
      detail::schema_error(f + ".gap_scope", "expected same_rack or same_room");
    }
  }
  if (p.tier == ClientTier::kStandard && p.gap_scope != GapScope::kSameRack) {
    detail::schema_error(f + ".gap_scope", "standard clients may not use inter-rack gaps");
  }
  if (detail::optional_member(j, "target")) p.target = detail::get_string(j, "target", f);
  return p;
}

FrontierSpec read_frontier(const json& j) {
  const std::string f = "frontier";
  detail::require_object(j, f);
  detail::require_known_keys(j, f, {"kind", "key", "width"});
  FrontierSpec spec;
  const std::string kind = detail::get_string(j, "kind", f);
  if (kind == "fifo") {
    spec.kind = FrontierKind::kFifo;
  } else if (kind == "lifo") {
    spec.kind = FrontierKind::kLifo;
  } else if (kind == "priority") {
    spec.kind = FrontierKind::kPriority;
  } else if (kind == "beam") {
    spec.kind = FrontierKind::kBeam;
  } else {
    detail::schema_error(f + ".kind", "expected fifo, lifo, priority or beam");
  }
  if (detail::optional_member(j, "key")) spec.key = detail::get_string(j, "key", f);
  if (detail::optional_member(j, "width")) {
    spec.beam_width = detail::get_count(j, "width", f);
    if (spec.beam_width == 0) detail::schema_error(f + ".width", "must be positive");
  }
  return spec;
}

SweepSection read_sweep(const json& j) {
  const std::string f = "sweep";
  detail::require_object(j, f);
  detail::require_known_keys(j, f, {"budgets", "pairs", "dimension", "threads"});
  SweepSection s;
  const json* budgets = detail::optional_member(j, "budgets");
  if (budgets == nullptr || !budgets->is_array()) detail::schema_error(f + ".budgets", "expected an array");
  for (const auto& b : *budgets) {
    if (!b.is_number()) detail::schema_error(f + ".budgets", "expected numbers");
    s.budgets.push_back(b.get<double>());
  }
  for (std::size_t i = 1; i < s.budgets.size(); ++i) {
    if (!(s.budgets[i] > s.budgets[i - 1])) detail::schema_error(f + ".budgets", "must be strictly increasing");
  }
  const json* pairs = detail::optional_member(j, "pairs");
  if (pairs == nullptr) detail::schema_error(f + ".pairs", "missing");
  if (pairs->is_string()) {
    if (pairs->get<std::string>() != "all_odf_pairs") detail::schema_error(f + ".pairs", "expected \"all_odf_pairs\" or a list");
    s.all_odf_pairs = true;
  } else {
    s.pairs = read_pairs(*pairs, f + ".pairs");
  }
  if (detail::optional_member(j, "dimension")) s.dimension = detail::get_string(j, "dimension", f);
  if (detail::optional_member(j, "threads")) s.threads = std::max<std::size_t>(1, detail::get_count(j, "threads", f));
  return s;
}

// --- config construction -----------------------------------------------------

DomainPtr build_domain(const DomainSpec& spec, const std::shared_ptr<const TypedGraph>& g) {
  switch (spec.kind) {
    case DomainSpec::Kind::kEmpty:
      return std::make_shared<EmptyDomain>();
    case DomainSpec::Kind::kScope:
      return std::make_shared<ScopeDomain>(g, spec.key);
    case DomainSpec::Kind::kSpatial:
      return std::make_shared<SpatialDomain>(g, spec.radius_m);
    case DomainSpec::Kind::kPropertyIn:
      return std::make_shared<PropertyInDomain>(
          g, spec.key, std::set<std::string, std::less<>>(spec.values.begin(), spec.values.end()));
    case DomainSpec::Kind::kIntersection:
    case DomainSpec::Kind::kUnion: {
      std::vector<DomainPtr> parts;
      for (const auto& p : spec.parts) parts.push_back(build_domain(p, g));
      return std::make_shared<CompositeDomain>(spec.kind == DomainSpec::Kind::kUnion
                                                   ? CompositeDomain::Mode::kUnion
                                                   : CompositeDomain::Mode::kIntersection,
                                               std::move(parts));
    }
  }
  throw Error(ErrorCode::kConfigError, "unknown domain kind");
}

PredicatePtr build_predicate(const PredicateSpec& spec) {
  switch (spec.kind) {
    case PredicateSpec::Kind::kAlways:
      return std::make_shared<AcceptAll>();
    case PredicateSpec::Kind::kMaxDistance:
      return std::make_shared<MaxDistance>(spec.limit_m);
    case PredicateSpec::Kind::kPropertyEquals:
      return std::make_shared<PropertyEquals>(spec.key);
    case PredicateSpec::Kind::kPropertyCompatible:
      return std::make_shared<PropertyCompatible>(spec.key, spec.compatible);
    case PredicateSpec::Kind::kHasAvailablePorts:
      return std::make_shared<HasAvailablePorts>(spec.key);
    case PredicateSpec::Kind::kAll: {
      std::vector<PredicatePtr> parts;
      for (const auto& p : spec.parts) parts.push_back(build_predicate(p));
      return std::make_shared<Conjunction>(std::move(parts));
    }
  }
  throw Error(ErrorCode::kConfigError, "unknown predicate kind");
}

double term_value(const StepTerm& term, const TypedGraph& g, const Transition& t) {
  double base = 0.0;
  if (term.edge_property) {
    const PropertyBag* props = g.edge_properties(t.from, t.to);
    auto v = props ? number_property(*props, *term.edge_property) : std::nullopt;
    if (!v) {
      throw Error(ErrorCode::kMissingProperty, "edge (" + g.id(t.from) + ", " + g.id(t.to) + ") has no numeric '" +
                                                   *term.edge_property + "'");
    }
    base = *v;
  } else if (term.distance) {
    auto a = coordinates_property(g.node_properties(t.from), kCoordinatesKey);
    auto b = coordinates_property(g.node_properties(t.to), kCoordinatesKey);
    if (!a || !b) {
      throw Error(ErrorCode::kMissingCoordinates, "(" + g.id(t.from) + ", " + g.id(t.to) + ") lacks coordinates");
    }
    base = euclidean_distance(*a, *b);
  }
  return term.add + term.scale * base;
}

bool compare(double lhs, CompareOp op, double rhs) {
  switch (op) {
    case CompareOp::kLess: return lhs < rhs;
    case CompareOp::kLessEqual: return lhs <= rhs;
    case CompareOp::kGreater: return lhs > rhs;
    case CompareOp::kGreaterEqual: return lhs >= rhs;
    case CompareOp::kEqual: return lhs == rhs;
    case CompareOp::kNotEqual: return lhs != rhs;
  }
  return false;
}

bool holds(const RuleCondition& c, const TypedGraph& g, const Traversal& t, const Accumulation& acc,
           std::optional<NodeIndex> target) {
  switch (c.subject) {
    case RuleCondition::Subject::kAtTarget:
      return target && t.current_node() == *target;
    case RuleCondition::Subject::kLength:
      return compare(static_cast<double>(t.length()), c.op, std::get<Quantity>(c.value).value);
    case RuleCondition::Subject::kDimension:
      return compare(acc.get(c.name), c.op, std::get<Quantity>(c.value).value);
    case RuleCondition::Subject::kNodeProperty: {
      const PropertyValue* v = find_property(g.node_properties(t.current_node()), c.name);
      if (c.op == CompareOp::kEqual) return v != nullptr && *v == c.value;
      if (c.op == CompareOp::kNotEqual) return v == nullptr || *v != c.value;
      const Quantity* q = v ? std::get_if<Quantity>(v) : nullptr;
      return q != nullptr && compare(q->value, c.op, std::get<Quantity>(c.value).value);
    }
  }
  return false;
}

SearchConfig<Accumulation> custom_config(const CustomPolicy& policy, std::shared_ptr<const TypedGraph> g,
                                         NodeIndex start, std::optional<NodeIndex> target) {
  if (start >= g->node_count()) throw Error(ErrorCode::kUnknownNode, "start handle out of range");
  SearchConfig<Accumulation> cfg;
  cfg.graph = g;
  cfg.start = start;
  cfg.domain = build_domain(policy.domain, g);
  cfg.predicate = build_predicate(policy.predicate);
  for (const auto& d : policy.dimensions) cfg.accumulator.initial.add_dimension(d.name, d.unit, d.initial);
  cfg.accumulator.step = [dims = policy.dimensions](const TypedGraph& graph, const Accumulation& prev,
                                                    const Traversal& t) {
    Accumulation next = prev;
    const Transition& last = t.steps.back();
    for (const auto& d : dims) {
      double delta = term_value(last.kind == TransitionKind::kEdge ? d.per_edge : d.per_gap, graph, last);
      if (d.per_node) {
        const PropertyValue* v = find_property(graph.node_properties(last.to), d.per_node->key);
        if (v != nullptr && *v == d.per_node->equals) delta += d.per_node->add;
      }
      next.add(d.name, delta);
    }
    return next;
  };

  std::vector<RuleCondition> terminate_if = policy.terminate_if;
  const bool has_target_rule = std::any_of(terminate_if.begin(), terminate_if.end(), [](const RuleCondition& c) {
    return c.subject == RuleCondition::Subject::kAtTarget;
  });
  if (target && !has_target_rule) terminate_if.push_back({RuleCondition::Subject::kAtTarget, {}, {}, {}});
  cfg.sigma = [prune = policy.prune_if, terminate = std::move(terminate_if), target](
                  const TypedGraph& graph, const Traversal& t, const Accumulation& acc) {
    for (const auto& c : prune) {
      if (holds(c, graph, t, acc, target)) return Decision::kPrune;
    }
    if (terminate.empty()) return Decision::kContinue;
    for (const auto& c : terminate) {
      if (!holds(c, graph, t, acc, target)) return Decision::kContinue;
    }
    return Decision::kTerminate;
  };
  return cfg;
}

}  // namespace

PolicyDocument parse_policy(std::string_view text) {
  const json doc = detail::parse_json(text);
  detail::require_object(doc, "document");
  detail::require_known_keys(doc, "document", {"format_version", "description", "scenario", "telco", "datacenter",
                                               "custom", "frontier", "safety_cap", "sweep"});
  detail::check_format_version(doc);

  PolicyDocument policy;
  const std::string scenario = detail::get_string(doc, "scenario", "document");
  if (scenario == "telco") {
    policy.scenario = ScenarioKind::kTelco;
    if (const json* t = detail::optional_member(doc, "telco")) policy.telco = read_telco(*t);
  } else if (scenario == "datacenter") {
    policy.scenario = ScenarioKind::kDatacenter;
    if (const json* d = detail::optional_member(doc, "datacenter")) policy.datacenter = read_datacenter(*d);
  } else if (scenario == "custom") {
    policy.scenario = ScenarioKind::kCustom;
    const json* c = detail::optional_member(doc, "custom");
    if (c == nullptr) detail::schema_error("custom", "missing for a custom scenario");
    policy.custom = read_custom(*c);
  } else {
    detail::schema_error("scenario", "expected telco, datacenter or custom");
  }
  if (const json* f = detail::optional_member(doc, "frontier")) policy.frontier = read_frontier(*f);
  if (detail::optional_member(doc, "safety_cap")) policy.safety_cap = detail::get_count(doc, "safety_cap", "document");
  if (const json* s = detail::optional_member(doc, "sweep")) {
    policy.sweep = read_sweep(*s);
    if (policy.scenario == ScenarioKind::kDatacenter) {
      detail::schema_error("sweep", "budget sweeps apply to telco and custom scenarios");
    }
    if (policy.scenario == ScenarioKind::kCustom) {
      if (!policy.sweep->dimension) detail::schema_error("sweep.dimension", "required for custom scenarios");
      const auto& prune = policy.custom.prune_if;
      if (std::none_of(prune.begin(), prune.end(), [&](const RuleCondition& c) {
            return c.subject == RuleCondition::Subject::kDimension && c.name == *policy.sweep->dimension &&
                   c.op == CompareOp::kGreater;
          })) {
        detail::schema_error("sweep.dimension", "no \">\" prune rule on '" + *policy.sweep->dimension + "'");
      }
    }
  }
  return policy;
}

PolicyDocument load_policy(const std::filesystem::path& path) { return parse_policy(read_text_file(path)); }

bool has_prune_horizon(const CustomPolicy& policy) {
  for (const auto& c : policy.prune_if) {
    const bool upper = c.op == CompareOp::kGreater || c.op == CompareOp::kGreaterEqual;
    if (!upper) continue;
    if (c.subject == RuleCondition::Subject::kLength) return true;
    if (c.subject != RuleCondition::Subject::kDimension) continue;
    auto it = std::find_if(policy.dimensions.begin(), policy.dimensions.end(),
                           [&](const DimensionSpec& d) { return d.name == c.name; });
    if (it == policy.dimensions.end()) continue;
    auto constant_positive = [](const StepTerm& t) { return !t.edge_property && !t.distance && t.add > 0; };
    const bool bonus_ok = !it->per_node || it->per_node->add >= 0;
    if (constant_positive(it->per_edge) && constant_positive(it->per_gap) && bonus_ok) return true;
  }
  return false;
}

SearchConfig<Accumulation> make_search_config(const PolicyDocument& policy, std::shared_ptr<const TypedGraph> g,
                                              NodeIndex start, std::optional<NodeIndex> target) {
  if (!g) throw Error(ErrorCode::kConfigError, "no graph");
  SearchConfig<Accumulation> cfg;
  switch (policy.scenario) {
    case ScenarioKind::kTelco: {
      TelcoPolicy telco = policy.telco;
      if (target) telco.target = g->id(*target);
      if (telco.target.empty()) throw Error(ErrorCode::kConfigError, "telco search needs a target ODF");
      cfg = telco_config(g, start, telco);
      break;
    }
    case ScenarioKind::kDatacenter: {
      DatacenterPolicy dc = policy.datacenter;
      if (target) dc.target = g->id(*target);
      cfg = datacenter_config(g, start, dc);
      break;
    }
    case ScenarioKind::kCustom:
      cfg = custom_config(policy.custom, g, start, target);
      break;
  }

  const auto& spec = policy.frontier;
  if (spec.kind == FrontierKind::kPriority || spec.kind == FrontierKind::kBeam) {
    std::string key = spec.key.value_or("");
    if (key.empty()) {
      if (cfg.accumulator.initial.size() == 0) throw Error(ErrorCode::kConfigError, "frontier key needs a dimension");
      key = cfg.accumulator.initial.dimensions().front().name;
    }
    if (!cfg.accumulator.initial.has(key)) {
      throw Error(ErrorCode::kConfigError, "frontier key '" + key + "' is not an accumulation dimension");
    }
    auto key_fn = [key](const Accumulation& a) { return a.get(key); };
    cfg.frontier = spec.kind == FrontierKind::kPriority ? FrontierPolicy<Accumulation>::priority(key_fn)
                                                        : FrontierPolicy<Accumulation>::beam(spec.beam_width, key_fn);
  } else {
    cfg.frontier = spec.kind == FrontierKind::kLifo ? FrontierPolicy<Accumulation>::lifo()
                                                    : FrontierPolicy<Accumulation>::fifo();
  }
  if (policy.safety_cap) cfg.safety_cap = *policy.safety_cap;
  return cfg;
}

BudgetedConfigFactory make_budget_family(const PolicyDocument& policy, std::shared_ptr<const TypedGraph> g) {
  if (!policy.sweep) throw Error(ErrorCode::kConfigError, "policy has no sweep section");
  if (policy.scenario == ScenarioKind::kDatacenter) {
    throw Error(ErrorCode::kConfigError, "budget sweeps apply to telco and custom scenarios");
  }
  return [policy, g](NodeIndex source, NodeIndex target, double budget) {
    PolicyDocument p = policy;
    if (p.scenario == ScenarioKind::kTelco) {
      p.telco.attenuation_budget_db = budget;
    } else {
      for (auto& c : p.custom.prune_if) {
        if (c.subject == RuleCondition::Subject::kDimension && c.name == *p.sweep->dimension &&
            c.op == CompareOp::kGreater) {
          c.value = Quantity{budget, {}};
        }
      }
    }
    return make_search_config(p, g, source, target);
  };
}

std::vector<std::pair<NodeIndex, NodeIndex>> sweep_pairs(const SweepSection& sweep, const TypedGraph& g) {
  if (sweep.all_odf_pairs) return all_odf_pairs(g);
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  for (const auto& [a, b] : sweep.pairs) pairs.emplace_back(g.index_of(a), g.index_of(b));
  return pairs;
}

}  // namespace gapwalk
