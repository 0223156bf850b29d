// tcdrm command-line front end.
//
//   tcdrm run         execute one strategy on a scenario, write reports
//   tcdrm compare     run tcdrm and noreplc on the same workload and diff
//   tcdrm init-config write the bundled default scenario
//   tcdrm validate    check a scenario file without running it
//
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime
// failure. Diagnostics go to stderr; summaries to stdout; data to files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tcdrm/engine.hpp"
#include "tcdrm/metrics.hpp"
#include "tcdrm/scenario.hpp"
#include "tcdrm/workload.hpp"

namespace fs = std::filesystem;

namespace {

struct RunRequest {
  std::string scenario_path;
  std::string strategy = "tcdrm";
  std::string out_dir = ".";
  std::vector<std::string> formats = {"csv", "json"};
  bool events = false;
  std::optional<std::uint64_t> seed_override;
};

tcdrm::StrategyKind parse_strategy(const std::string& name) {
  if (name == "tcdrm") return tcdrm::StrategyKind::tcdrm;
  if (name == "noreplc") return tcdrm::StrategyKind::noreplc;
  throw tcdrm::ConfigError("unknown strategy: " + name + " (expected tcdrm or noreplc)");
}

tcdrm::Scenario load_with_override(const RunRequest& req) {
  tcdrm::Scenario scenario = tcdrm::load_scenario(req.scenario_path);
  if (req.seed_override) {
    scenario.seed = *req.seed_override;
    // Regenerate anything derived from the seed.
    nlohmann::json doc = tcdrm::scenario_to_json(scenario);
    scenario = tcdrm::scenario_from_json(doc);
  }
  return scenario;
}

void write_outputs(const tcdrm::RunOutput& output, const RunRequest& req,
                   const std::string& label) {
  fs::create_directories(req.out_dir);
  for (const std::string& format : req.formats) {
    if (format == "csv") {
      tcdrm::write_file((fs::path(req.out_dir) / ("report-" + label + ".csv")).string(),
                        tcdrm::report_to_csv(output.report));
    } else if (format == "json") {
      tcdrm::write_file((fs::path(req.out_dir) / ("report-" + label + ".json")).string(),
                        tcdrm::report_to_json(output.report).dump(2) + "\n");
    } else {
      throw tcdrm::ConfigError("unknown format: " + format + " (expected csv or json)");
    }
  }
  if (req.events) {
    std::string lines;
    for (const nlohmann::json& e : output.events) lines += e.dump() + "\n";
    tcdrm::write_file((fs::path(req.out_dir) / ("events-" + label + ".ndjson")).string(), lines);
  }
}

void print_summary(const tcdrm::SimReport& report) {
  std::cout << "strategy=" << tcdrm::to_string(report.strategy)
            << " queries=" << report.rows.size()
            << " total_cost=" << report.cumulative_cost.str()
            << " avg_t_q_s=" << nlohmann::json(report.aggregates.avg_response_time_s).dump()
            << " final_replicas=" << report.aggregates.final_replicas << "\n";
}

int cmd_run(const RunRequest& req) {
  tcdrm::Scenario scenario = load_with_override(req);
  tcdrm::StrategyKind kind = parse_strategy(req.strategy);
  tcdrm::RunOutput output = tcdrm::run(scenario, kind);
  write_outputs(output, req, tcdrm::to_string(kind));
  print_summary(output.report);
  return 0;
}

int cmd_compare(const RunRequest& req, const std::vector<std::string>& from_reports) {
  if (!from_reports.empty()) {
    tcdrm::SimReport a = tcdrm::import_report(from_reports[0]);
    tcdrm::SimReport b = tcdrm::import_report(from_reports[1]);
    const tcdrm::SimReport& t = a.strategy == tcdrm::StrategyKind::tcdrm ? a : b;
    const tcdrm::SimReport& n = a.strategy == tcdrm::StrategyKind::tcdrm ? b : a;
    tcdrm::ComparisonSummary summary = tcdrm::compare(t, n);
    std::cout << tcdrm::comparison_to_json(summary).dump(2) << "\n";
    return 0;
  }

  tcdrm::Scenario scenario = load_with_override(req);
  tcdrm::RunOutput tcdrm_output = tcdrm::run(scenario, tcdrm::StrategyKind::tcdrm);
  tcdrm::RunOutput baseline_output = tcdrm::run(scenario, tcdrm::StrategyKind::noreplc);
  write_outputs(tcdrm_output, req, "tcdrm");
  write_outputs(baseline_output, req, "noreplc");
  tcdrm::ComparisonSummary summary = tcdrm::compare(tcdrm_output.report, baseline_output.report);
  tcdrm::write_file((fs::path(req.out_dir) / "comparison.json").string(),
                    tcdrm::comparison_to_json(summary).dump(2) + "\n");
  print_summary(tcdrm_output.report);
  print_summary(baseline_output.report);
  std::cout << "bandwidth_cost_reduction="
            << nlohmann::json(summary.bandwidth_cost_reduction).dump()
            << " response_time_reduction_last_quartile="
            << nlohmann::json(summary.response_time_reduction_last_quartile).dump() << "\n";
  return 0;
}

int cmd_init_config(const std::string& path) {
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  tcdrm::write_file(path, tcdrm::default_scenario_text());
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_validate(const std::string& path) {
  tcdrm::Scenario scenario = tcdrm::load_scenario(path);
  auto findings = tcdrm::validate_scenario(scenario);
  if (!findings.empty()) {
    for (const auto& f : findings) std::cerr << "finding: " << f << "\n";
    return 1;
  }
  std::cout << "ok: " << path << " (" << scenario.relations.size() << " relations, seed "
            << scenario.seed << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tcdrm: tenant budget-aware multi-cloud replication simulator"};
  app.require_subcommand(1);

  RunRequest run_req;
  CLI::App* run_cmd = app.add_subcommand("run", "run one strategy on a scenario");
  run_cmd->add_option("--scenario", run_req.scenario_path, "scenario JSON file")->required();
  run_cmd->add_option("--strategy", run_req.strategy, "tcdrm or noreplc");
  run_cmd->add_option("--out", run_req.out_dir, "output directory");
  run_cmd->add_option("--format", run_req.formats, "csv and/or json")->delimiter(',');
  run_cmd->add_flag("--events", run_req.events, "write the event log (ndjson)");
  std::uint64_t run_seed = 0;
  CLI::Option* run_seed_opt = run_cmd->add_option("--seed", run_seed, "override scenario seed");

  RunRequest cmp_req;
  std::vector<std::string> from_reports;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "run both strategies and compare");
  CLI::Option* cmp_scenario =
      cmp_cmd->add_option("--scenario", cmp_req.scenario_path, "scenario JSON file");
  cmp_cmd->add_option("--out", cmp_req.out_dir, "output directory");
  cmp_cmd->add_option("--format", cmp_req.formats, "csv and/or json")->delimiter(',');
  cmp_cmd->add_flag("--events", cmp_req.events, "write event logs (ndjson)");
  std::uint64_t cmp_seed = 0;
  CLI::Option* cmp_seed_opt = cmp_cmd->add_option("--seed", cmp_seed, "override scenario seed");
  CLI::Option* from_opt = cmp_cmd->add_option("--from-reports", from_reports,
                                              "compare two existing report JSON files")
                              ->expected(2);
  cmp_scenario->excludes(from_opt);

  std::string init_path;
  CLI::App* init_cmd = app.add_subcommand("init-config", "write the bundled default scenario");
  init_cmd->add_option("path", init_path, "destination file")->required();

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "validate a scenario file");
  validate_cmd->add_option("path", validate_path, "scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run_cmd->parsed()) {
      if (*run_seed_opt) run_req.seed_override = run_seed;
      return cmd_run(run_req);
    }
    if (cmp_cmd->parsed()) {
      if (*cmp_seed_opt) cmp_req.seed_override = cmp_seed;
      if (from_reports.empty() && cmp_req.scenario_path.empty())
        throw tcdrm::ConfigError("compare needs --scenario or --from-reports");
      return cmd_compare(cmp_req, from_reports);
    }
    if (init_cmd->parsed()) return cmd_init_config(init_path);
    if (validate_cmd->parsed()) return cmd_validate(validate_path);
  } catch (const tcdrm::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tcdrm::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tcdrm::WorkloadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tcdrm::MetricsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
