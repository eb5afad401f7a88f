#include "cli.hpp"

#include <cstdlib>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "gapwalk/analysis.hpp"
#include "gapwalk/error.hpp"
#include "gapwalk/estimate.hpp"
#include "gapwalk/io.hpp"
#include "gapwalk/oracle.hpp"
#include "gapwalk/scenarios.hpp"

namespace gapwalk::cli {
namespace {

struct SearchArgs {
  std::string topology;
  std::string policy;
  std::string from;
  std::string to;
  std::string frontier;
  std::optional<std::size_t> max_solutions;
  std::optional<std::size_t> safety_cap;
  std::optional<std::size_t> max_depth;  // oracle-search only
  std::string out;
  std::string format = "json";
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::optional<std::size_t> env_safety_cap() {
  const char* raw = std::getenv(kSafetyCapEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw UsageError(std::string(kSafetyCapEnv) + " is not a number");
  return static_cast<std::size_t>(value);
}

ResultFormat parse_format(const std::string& f) {
  if (f == "json") return ResultFormat::kJson;
  if (f == "csv") return ResultFormat::kCsv;
  return ResultFormat::kTable;
}

// Loads inputs and builds the search config shared by search and oracle-search.
struct PreparedSearch {
  std::shared_ptr<const TypedGraph> graph;
  PolicyDocument policy;
  SearchConfig<Accumulation> config;
  std::optional<NodeIndex> target;
};

PreparedSearch prepare(const SearchArgs& a) {
  PreparedSearch p;
  p.graph = std::make_shared<const TypedGraph>(load_topology(a.topology));
  p.policy = load_policy(a.policy);
  if (!a.frontier.empty()) {
    if (a.frontier == "fifo") p.policy.frontier.kind = FrontierKind::kFifo;
    if (a.frontier == "lifo") p.policy.frontier.kind = FrontierKind::kLifo;
    if (a.frontier == "priority") p.policy.frontier.kind = FrontierKind::kPriority;
    if (a.frontier == "beam") p.policy.frontier.kind = FrontierKind::kBeam;
  }
  const NodeIndex start = p.graph->index_of(a.from);
  if (!a.to.empty()) p.target = p.graph->index_of(a.to);
  if (p.policy.scenario == ScenarioKind::kTelco && !p.target && p.policy.telco.target.empty()) {
    throw UsageError("telco search needs --to or a target in the policy");
  }
  if (p.policy.scenario == ScenarioKind::kCustom && !has_prune_horizon(p.policy.custom) && !a.safety_cap) {
    throw Error(ErrorCode::kConfigError,
                "custom policy has no prune horizon (length or strictly growing dimension); pass --safety-cap to run it");
  }
  p.config = make_search_config(p.policy, p.graph, start, p.target);
  if (p.policy.scenario == ScenarioKind::kTelco && !p.target) {
    p.target = p.graph->index_of(p.policy.telco.target);
  }
  if (a.safety_cap) {
    p.config.safety_cap = *a.safety_cap;
  } else if (!p.policy.safety_cap) {
    if (auto cap = env_safety_cap()) p.config.safety_cap = *cap;
  }
  if (p.config.safety_cap && *p.config.safety_cap == 0) p.config.safety_cap.reset();
  return p;
}

int report(const SearchArgs& a, const PreparedSearch& p, const SolutionSet<Accumulation>& result,
           std::ostream& out, std::ostream& err) {
  ResultOptions options{parse_format(a.format), a.max_solutions, p.target};
  emit(a.out, render_result(p.config, result, options), out);
  if (result.solutions.empty()) err << kNoSolutionMessage << '\n';
  if (result.safety_cap_exceeded) {
    err << "SafetyCapExceeded: stopped after " << result.stats.states_expanded << " expanded states\n";
    return kExitSafetyCap;
  }
  return kExitOk;
}

void add_search_options(CLI::App* cmd, SearchArgs& a, bool oracle) {
  cmd->add_option("topology", a.topology, "Topology document")->required()->check(CLI::ExistingFile);
  cmd->add_option("policy", a.policy, "Policy document")->required()->check(CLI::ExistingFile);
  cmd->add_option("--from", a.from, "Start node id")->required();
  cmd->add_option("--to", a.to, "Target node id");
  cmd->add_option("--frontier", a.frontier, "Frontier policy")
      ->check(CLI::IsMember({"fifo", "lifo", "priority", "beam"}));
  cmd->add_option("--max-solutions", a.max_solutions, "Report at most k solutions");
  cmd->add_option("--safety-cap", a.safety_cap, "Maximum expanded states (0 disables)");
  cmd->add_option("--out", a.out, "Output file (default: standard output)");
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  if (oracle) cmd->add_option("--max-depth", a.max_depth, "Enumeration depth limit (default |N|-1)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traversal search over incomplete typed graphs"};
  app.require_subcommand(1);

  // validate
  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a topology document");
  validate->add_option("topology", validate_path)->required()->check(CLI::ExistingFile);

  // search / oracle-search
  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand("search", "Search admissible traversals");
  add_search_options(search_cmd, search_args, false);
  SearchArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle-search", "Brute-force reference enumeration");
  oracle_cmd->group("");
  add_search_options(oracle_cmd, oracle_args, true);

  // sweep
  std::string sweep_topology, sweep_policy, sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Budget calibration sweep");
  sweep_cmd->add_option("topology", sweep_topology)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("policy", sweep_policy)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep_out, "CSV output file (default: standard output)");

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic topology");
  generate->require_subcommand(1);
  TelcoGeneratorParams telco_params;
  std::string telco_out;
  auto* gen_telco = generate->add_subcommand("telco", "Optical network");
  gen_telco->add_option("--seed", telco_params.seed)->required();
  gen_telco->add_option("--sites", telco_params.sites);
  gen_telco->add_option("--odfs-per-site", telco_params.odfs_per_site);
  gen_telco->add_option("--splice-boxes-per-site", telco_params.splice_boxes_per_site);
  gen_telco->add_option("--amplifier-fraction", telco_params.amplifier_fraction);
  gen_telco->add_option("--site-spacing-m", telco_params.site_spacing_m);
  gen_telco->add_option("--site-extent-m", telco_params.site_extent_m);
  gen_telco->add_option("--intra-site-link-probability", telco_params.intra_site_link_probability);
  gen_telco->add_option("--min-attenuation-db-per-km", telco_params.min_attenuation_db_per_km);
  gen_telco->add_option("--max-attenuation-db-per-km", telco_params.max_attenuation_db_per_km);
  gen_telco->add_option("--out", telco_out)->required();
  DatacenterGeneratorParams dc_params;
  std::string dc_out;
  auto* gen_dc = generate->add_subcommand("datacenter", "Datacenter cabling");
  gen_dc->add_option("--seed", dc_params.seed)->required();
  gen_dc->add_option("--rooms", dc_params.rooms);
  gen_dc->add_option("--rows-per-room", dc_params.rows_per_room);
  gen_dc->add_option("--racks-per-row", dc_params.racks_per_row);
  gen_dc->add_option("--panels-per-rack", dc_params.panels_per_rack);
  gen_dc->add_option("--client-racks-per-distribution", dc_params.client_racks_per_distribution);
  gen_dc->add_option("--existing-cross-connect-probability", dc_params.existing_cross_connect_probability);
  gen_dc->add_option("--full-panel-probability", dc_params.full_panel_probability);
  gen_dc->add_option("--out", dc_out)->required();

  // estimate
  std::string estimate_path;
  std::uint64_t max_domain = 0;
  std::uint32_t depth = 0;
  auto* estimate = app.add_subcommand("estimate", "Upper bound on explored states");
  estimate->add_option("topology", estimate_path)->required()->check(CLI::ExistingFile);
  estimate->add_option("--max-domain", max_domain, "Largest acceptability domain size")->required();
  estimate->add_option("--depth", depth, "Traversal length horizon L")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (validate->parsed()) {
      const TypedGraph g = load_topology(validate_path);
      out << "valid: " << g.node_count() << " nodes, " << g.edge_count() << " directed edges";
      if (g.node_count() > 0) {
        const auto stats = g.degree_stats();
        out << ", average out-degree " << stats.avg_numerator;
        if (stats.avg_denominator != 1) out << '/' << stats.avg_denominator;
        out << ", max out-degree " << stats.max_out_degree;
      }
      out << '\n';
      return kExitOk;
    }
    if (search_cmd->parsed()) {
      const auto prepared = prepare(search_args);
      return report(search_args, prepared, search(prepared.config), out, err);
    }
    if (oracle_cmd->parsed()) {
      const auto prepared = prepare(oracle_args);
      if (oracle_size_advisory_exceeded(*prepared.graph)) {
        err << "warning: GraphTooLarge: exhaustive enumeration over " << prepared.graph->node_count()
            << " nodes may be slow\n";
      }
      const std::size_t n = prepared.graph->node_count();
      OracleConfig<Accumulation> ocfg{prepared.config, oracle_args.max_depth.value_or(n == 0 ? 0 : n - 1)};
      return report(oracle_args, prepared, enumerate_solutions(ocfg), out, err);
    }
    if (sweep_cmd->parsed()) {
      auto graph = std::make_shared<const TypedGraph>(load_topology(sweep_topology));
      const PolicyDocument policy = load_policy(sweep_policy);
      if (!policy.sweep) throw UsageError("policy has no sweep section");
      SweepSpec spec;
      spec.budgets = policy.sweep->budgets;
      spec.pairs = sweep_pairs(*policy.sweep, *graph);
      spec.make_config = make_budget_family(policy, graph);
      spec.threads = policy.sweep->threads;
      const SweepResult result = sweep(spec);
      emit(sweep_out, sweep_to_csv(*graph, result), out);
      if (result.budgets.size() >= 2) {
        (sweep_out.empty() ? err : out) << knee_report_table(knee_report(result));
      }
      return kExitOk;
    }
    if (gen_telco->parsed()) {
      write_text_file(telco_out, serialize_topology(generate_telco(telco_params)));
      return kExitOk;
    }
    if (gen_dc->parsed()) {
      write_text_file(dc_out, serialize_topology(generate_datacenter(dc_params)));
      return kExitOk;
    }
    if (estimate->parsed()) {
      const TypedGraph g = load_topology(estimate_path);
      const StateBound bound = estimate_state_bound(g, max_domain, depth);
      out << "bound: " << bound.exact << '\n';
      out << "approximate: " << format_number(bound.approximate) << '\n';
      if (bound.saturated()) out << "capped: saturated\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kSafetyCapExceeded ? kExitSafetyCap : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace gapwalk::cli
