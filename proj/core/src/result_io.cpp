#include <algorithm>
#include <sstream>

#include "gapwalk/error.hpp"
#include "gapwalk/io.hpp"
#include "json_support.hpp"

namespace gapwalk {

using detail::json;

namespace {

// Accumulation after every prefix of t, a_0 first.
std::vector<Accumulation> accumulation_trace(const SearchConfig<Accumulation>& cfg, const Traversal& t) {
  std::vector<Accumulation> trace{cfg.accumulator.initial};
  Traversal prefix{t.start, {}};
  for (const auto& step : t.steps) {
    prefix.steps.push_back(step);
    trace.push_back(cfg.accumulator.step(*cfg.graph, trace.back(), prefix));
  }
  return trace;
}

json accumulation_json(const Accumulation& acc) {
  json out = json::object();
  for (const auto& d : acc.dimensions()) out[d.name] = d.value;
  return out;
}

json delta_json(const Accumulation& before, const Accumulation& after) {
  json out = json::object();
  for (const auto& d : after.dimensions()) out[d.name] = d.value - before.get(d.name);
  return out;
}

std::string render_json(const SearchConfig<Accumulation>& cfg, const SolutionSet<Accumulation>& result,
                        const ResultOptions& options, std::size_t shown) {
  const TypedGraph& g = *cfg.graph;
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["start"] = g.id(cfg.start);
  if (options.target) doc["target"] = g.id(*options.target);
  doc["solution_count"] = result.solutions.size();
  doc["reported"] = shown;
  doc["truncated"] = shown < result.solutions.size();
  doc["safety_cap_exceeded"] = result.safety_cap_exceeded;
  if (result.solutions.empty()) doc["message"] = kNoSolutionMessage;
  doc["stats"] = {{"states_extracted", result.stats.states_extracted},
                  {"states_expanded", result.stats.states_expanded},
                  {"states_pruned", result.stats.states_pruned},
                  {"states_terminated", result.stats.states_terminated},
                  {"gap_transitions_generated", result.stats.gap_transitions_generated},
                  {"states_dropped_by_beam", result.stats.states_dropped_by_beam}};
  json dims = json::array();
  for (const auto& d : cfg.accumulator.initial.dimensions()) dims.push_back({{"name", d.name}, {"unit", d.unit}});
  doc["dimensions"] = std::move(dims);
  doc["initial_accumulation"] = accumulation_json(cfg.accumulator.initial);

  json solutions = json::array();
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& s = result.solutions[i];
    const auto trace = accumulation_trace(cfg, s.traversal);
    json transitions = json::array();
    for (std::size_t k = 0; k < s.traversal.steps.size(); ++k) {
      const auto& t = s.traversal.steps[k];
      transitions.push_back({{"from", g.id(t.from)},
                             {"to", g.id(t.to)},
                             {"kind", std::string(to_string(t.kind))},
                             {"delta", delta_json(trace[k], trace[k + 1])},
                             {"accumulation", accumulation_json(trace[k + 1])}});
    }
    solutions.push_back({{"index", i},
                         {"length", s.traversal.length()},
                         {"gap_transitions", s.traversal.gap_count()},
                         {"transitions", std::move(transitions)},
                         {"accumulation", accumulation_json(s.accumulation)}});
  }
  doc["solutions"] = std::move(solutions);
  return doc.dump(2) + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string render_csv(const SearchConfig<Accumulation>& cfg, const SolutionSet<Accumulation>& result,
                       std::size_t shown) {
  const TypedGraph& g = *cfg.graph;
  std::ostringstream out;
  out << "solution,step,from,to,kind";
  for (const auto& d : cfg.accumulator.initial.dimensions()) out << ',' << csv_field(d.name);
  out << '\n';
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& s = result.solutions[i];
    const auto trace = accumulation_trace(cfg, s.traversal);
    for (std::size_t k = 0; k < trace.size(); ++k) {
      out << i << ',' << k << ',';
      if (k == 0) {
        out << csv_field(g.id(s.traversal.start)) << ',' << csv_field(g.id(s.traversal.start)) << ",start";
      } else {
        const auto& t = s.traversal.steps[k - 1];
        out << csv_field(g.id(t.from)) << ',' << csv_field(g.id(t.to)) << ',' << to_string(t.kind);
      }
      for (const auto& d : trace[k].dimensions()) out << ',' << format_number(d.value);
      out << '\n';
    }
  }
  return out.str();
}

std::string render_table(const SearchConfig<Accumulation>& cfg, const SolutionSet<Accumulation>& result,
                         std::size_t shown) {
  const TypedGraph& g = *cfg.graph;
  std::ostringstream out;
  if (result.solutions.empty()) {
    out << kNoSolutionMessage << '\n';
  } else {
    out << result.solutions.size() << " solution(s)";
    if (shown < result.solutions.size()) out << ", showing " << shown;
    out << '\n';
  }
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& s = result.solutions[i];
    out << '#' << i + 1 << "  " << g.id(s.traversal.start);
    for (const auto& t : s.traversal.steps) {
      out << (t.kind == TransitionKind::kEdge ? " -> " : " ~> ") << g.id(t.to);
    }
    out << '\n';
    for (const auto& d : s.accumulation.dimensions()) {
      out << "    " << d.name << " = " << format_number(d.value);
      if (!d.unit.empty()) out << ' ' << d.unit;
      out << '\n';
    }
  }
  out << "expanded " << result.stats.states_expanded << ", pruned " << result.stats.states_pruned
      << ", terminated " << result.stats.states_terminated << ", gaps generated "
      << result.stats.gap_transitions_generated << '\n';
  if (result.safety_cap_exceeded) out << "safety cap exceeded: results are partial\n";
  return out.str();
}

}  // namespace

std::string render_result(const SearchConfig<Accumulation>& cfg, const SolutionSet<Accumulation>& result,
                          const ResultOptions& options) {
  const std::size_t shown = std::min(result.solutions.size(), options.max_solutions.value_or(result.solutions.size()));
  switch (options.format) {
    case ResultFormat::kJson: return render_json(cfg, result, options, shown);
    case ResultFormat::kCsv: return render_csv(cfg, result, shown);
    case ResultFormat::kTable: return render_table(cfg, result, shown);
  }
  return {};
}

std::vector<TraversalState<Accumulation>> parse_result(std::string_view text, const TypedGraph& g) {
  const json doc = detail::parse_json(text);
  detail::require_object(doc, "document");
  detail::check_format_version(doc);
  const NodeIndex start = g.index_of(detail::get_string(doc, "start", "document"));

  std::vector<std::string> names;
  std::vector<std::string> units;
  const json* dims = detail::optional_member(doc, "dimensions");
  if (dims == nullptr || !dims->is_array()) detail::schema_error("dimensions", "expected an array");
  for (const auto& d : *dims) {
    names.push_back(detail::get_string(d, "name", "dimensions"));
    units.push_back(detail::get_string(d, "unit", "dimensions"));
  }
  auto read_acc = [&](const json& j, const std::string& field) {
    Accumulation acc;
    for (std::size_t i = 0; i < names.size(); ++i) acc.add_dimension(names[i], units[i], detail::get_number(j, names[i], field));
    return acc;
  };

  std::vector<TraversalState<Accumulation>> out;
  const json* solutions = detail::optional_member(doc, "solutions");
  if (solutions == nullptr || !solutions->is_array()) detail::schema_error("solutions", "expected an array");
  for (std::size_t i = 0; i < solutions->size(); ++i) {
    const json& s = (*solutions)[i];
    const std::string field = "solutions[" + std::to_string(i) + "]";
    TraversalState<Accumulation> state{Traversal{start, {}}, {}};
    for (const auto& t : s.at("transitions")) {
      const std::string kind = detail::get_string(t, "kind", field);
      if (kind != "edge" && kind != "gap") detail::schema_error(field + ".kind", "expected edge or gap");
      state.traversal.steps.push_back({g.index_of(detail::get_string(t, "from", field)),
                                       g.index_of(detail::get_string(t, "to", field)),
                                       kind == "edge" ? TransitionKind::kEdge : TransitionKind::kGap});
    }
    state.accumulation = read_acc(s.at("accumulation"), field + ".accumulation");
    out.push_back(std::move(state));
  }
  return out;
}

std::string sweep_to_csv(const TypedGraph& g, const SweepResult& result) {
  std::ostringstream out;
  out << "budget,source,target,reachable,fraction\n";
  for (std::size_t b = 0; b < result.budgets.size(); ++b) {
    const std::string fraction = format_number(result.connectivity_fraction(b));
    for (std::size_t p = 0; p < result.pairs.size(); ++p) {
      out << format_number(result.budgets[b]) << ',' << csv_field(g.id(result.pairs[p].first)) << ','
          << csv_field(g.id(result.pairs[p].second)) << ',' << (result.cells[b][p].reachable ? 1 : 0) << ','
          << fraction << '\n';
    }
  }
  return out.str();
}

std::string knee_report_table(const std::vector<KneePoint>& points) {
  std::ostringstream out;
  out << "budget  fraction  marginal_gain\n";
  for (const auto& p : points) {
    out << format_number(p.budget) << "  " << format_number(p.fraction) << "  "
        << (p.marginal_gain ? format_number(*p.marginal_gain) : std::string("-")) << '\n';
  }
  return out.str();
}

}  // namespace gapwalk
