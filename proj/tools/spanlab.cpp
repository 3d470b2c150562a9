// spanlab: reproduce the context-span divergence tables, fits and figure.
//
// Exit codes: 0 success, 2 input/parse error, 3 numerical/domain error,
// 4 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spanlab/csv.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/report.hpp"
#include "spanlab/timeline.hpp"

namespace {

using namespace spanlab;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::string preset;
  std::string policy = "asserted";
  std::string scenarios_path;
  std::optional<int> periods;
  std::optional<int> intervene_at;
};

report::RunConfig load(const Options& opts) {
  const std::string path =
      opts.config_path.empty() ? report::default_config_path(SPANLAB_DATA_DIR) : opts.config_path;
  report::RunConfig config = report::load_config(path);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.out_dir) config.output_dir = *opts.out_dir;
  if (!opts.preset.empty()) config.fit_preset = growthfit::parse_preset(opts.preset);
  if (!opts.scenarios_path.empty()) config.scenarios_path = opts.scenarios_path;
  if (opts.periods) config.loop.periods = *opts.periods;
  if (opts.intervene_at) config.loop.intervene_at = *opts.intervene_at;
  return config;
}

int cmd_validate(const report::RunConfig& config) {
  const auto dataset =
      timeline::parse_timeline(csv::read_file(config.timeline_path), config.timeline_path);
  const auto findings = timeline::validate(dataset);
  std::cout << timeline::findings_to_json_lines(findings);
  std::cerr << dataset.size() << " releases, " << findings.size() << " findings\n";
  return 0;
}

int cmd_fit(const report::RunConfig& config) {
  const auto results = report::compute(config);
  for (const auto& [name, contents] : report::render_bundle(results)) {
    if (name == "fit.json") std::cout << contents;
  }
  return 0;
}

int cmd_ecs(const report::RunConfig& config, const std::string& policy_name) {
  const auto policy = ecs::parse_policy(policy_name);
  const ecs::EcsSchedule schedule(ecs::parse_anchors(csv::read_file(config.anchors_path)),
                                  ecs::parse_asserted(csv::read_file(config.asserted_ecs_path)),
                                  config.reading);
  std::cout << "# policy=" << ecs::policy_name(policy) << "\nyear,tokens\n";
  for (const auto& p : ecs::ecs_series(schedule, policy)) {
    std::cout << p.year << ',' << csv::format_double(p.value) << '\n';
  }
  return 0;
}

int cmd_divergence(const report::RunConfig& config) {
  const auto r = report::compute(config);
  std::cout << divergence::rows_to_csv(r.rows);
  std::cerr << "crossover: " << divergence::describe(r.crossover) << '\n';
  return 0;
}

int cmd_sensitivity(const report::RunConfig& config) {
  const ecs::EcsSchedule schedule(ecs::parse_anchors(csv::read_file(config.anchors_path)),
                                  ecs::parse_asserted(csv::read_file(config.asserted_ecs_path)),
                                  config.reading);
  const auto scenarios = sensitivity::parse_scenarios(csv::read_file(config.scenarios_path));
  std::cout << sensitivity::results_to_csv(sensitivity::run_all(scenarios, schedule, config.reading));
  return 0;
}

int cmd_loop(const report::RunConfig& config) {
  const auto r = report::compute(config);
  std::cout << loopsim::trajectory_to_csv(r.trajectory);
  std::cerr << "classification: " << loopsim::trajectory_name(r.loop_class) << '\n';
  return 0;
}

int cmd_report(const report::RunConfig& config) {
  const auto bundle = report::run_pipeline(config);
  for (const auto& [name, contents] : bundle) {
    std::cout << config.output_dir << '/' << name << " (" << contents.size() << " bytes)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-span divergence toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_option("--config", opts.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", opts.seed, "Bootstrap seed (overrides the config)");
  app.add_option("--out", opts.out_dir, "Output directory for `report`");

  auto* validate = app.add_subcommand("validate", "Check the context-window timeline");
  auto* fit = app.add_subcommand("fit", "Fit the exponential growth model (JSON)");
  fit->add_option("--preset", opts.preset, "table2-frontier | appendixA-all | appendixA-monthly");
  auto* ecs_cmd = app.add_subcommand("ecs", "Yearly human ECS series (CSV)");
  ecs_cmd->add_option("--policy", opts.policy, "anchored | asserted");
  auto* div = app.add_subcommand("divergence", "AI/human ratio table (CSV)");
  auto* sens = app.add_subcommand("sensitivity", "CSF scenario table (CSV)");
  sens->add_option("--scenarios", opts.scenarios_path, "Scenario definitions (JSON)");
  auto* loop = app.add_subcommand("loop", "Delegation feedback loop trajectory (CSV)");
  loop->add_option("--periods", opts.periods, "Number of periods")->check(CLI::PositiveNumber);
  loop->add_option("--intervene", opts.intervene_at, "Period at which the practice floor rises");
  auto* rep = app.add_subcommand("report", "Run the full pipeline and write the bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const report::RunConfig config = load(opts);
    if (validate->parsed()) return cmd_validate(config);
    if (fit->parsed()) return cmd_fit(config);
    if (ecs_cmd->parsed()) return cmd_ecs(config, opts.policy);
    if (div->parsed()) return cmd_divergence(config);
    if (sens->parsed()) return cmd_sensitivity(config);
    if (loop->parsed()) return cmd_loop(config);
    if (rep->parsed()) return cmd_report(config);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
