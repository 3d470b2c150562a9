#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spanlab/conversion.hpp"
#include "spanlab/divergence.hpp"
#include "spanlab/ecs.hpp"
#include "spanlab/growthfit.hpp"
#include "spanlab/loopsim.hpp"
#include "spanlab/sensitivity.hpp"
#include "spanlab/series.hpp"

namespace spanlab::report {

std::string_view toolkit_version();

struct LoopConfig {
  int periods = 40;
  std::optional<int> intervene_at;
  double intervention_floor_factor = 1.5;  // x maintenance_practice
  double classify_tolerance = 1.0;         // tokens per period
};

struct RunConfig {
  std::string timeline_path;
  std::string anchors_path;
  std::string asserted_ecs_path;
  std::string scenarios_path;
  std::vector<std::string> exclusions;
  int frontier_as_of_month = 12;  // frontier cutoff month within each year
  growthfit::FitPreset fit_preset = growthfit::FitPreset::table2_frontier;
  bool fit_range_upper = true;  // 2022 fitted at 8,192 (false: 4,096)
  divergence::QualityBand qa_band;
  ReadingParams reading;
  int bootstrap_resamples = 10'000;
  std::uint64_t seed = 42;
  std::string output_dir = "out";
  int first_year = 2017;
  int last_year = 2026;
  LoopConfig loop;
};

/// Throws DomainError on invariant violations (resamples < 100, years).
void check_config(const RunConfig& config);

/// Reads a JSON configuration. Relative paths resolve against the directory
/// holding the config file. Missing keys keep their defaults.
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const std::string& json_text, const std::string& base_dir);
std::string config_to_json(const RunConfig& config);

/// The configuration bundled with the data directory.
std::string default_config_path(const std::string& data_dir);

struct PresetFit {
  growthfit::FitPreset preset;
  growthfit::GrowthFit fit;
  growthfit::Interval bootstrap;
};

struct DeclineRate {
  int from = 0;
  int to = 0;
  double tokens_per_year = 0.0;
  double published_value = 0.0;
};

/// Everything the report renders.
struct PipelineResults {
  RunConfig config;
  std::string config_hash;
  std::vector<ecs::EcsAnchor> anchors;
  YearlySeries ai_series;
  std::vector<std::string> leading_models;  // per year of ai_series
  YearlySeries ecs_asserted;
  YearlySeries ecs_anchored;
  std::vector<divergence::DivergenceRow> rows;
  divergence::Crossover crossover;
  std::vector<PresetFit> fits;
  std::vector<DeclineRate> decline_rates;
  std::vector<sensitivity::NamedResult> scenarios;
  std::vector<loopsim::LoopState> trajectory;
  loopsim::Trajectory loop_class = loopsim::Trajectory::stabilized;
  loopsim::LoopParams loop_params;
};

/// Loads inputs and runs every stage. Errors are rethrown with the same type
/// and the failing stage named: "stage: timeline, file not found: ...".
PipelineResults compute(const RunConfig& config);

/// Ordered (file name, contents).
using Bundle = std::vector<std::pair<std::string, std::string>>;

/// table1.csv, table2.csv, table3.csv, fit.json, divergence.svg,
/// loop_trajectory.csv, report.md. Each carries the config hash, seed and
/// toolkit version; no timestamps, so identical inputs give identical bytes.
Bundle render_bundle(const PipelineResults& results);

/// Markdown with the three tables, the lambda comparison and the ECS(2022)
/// callout.
std::string render_tables(const PipelineResults& results);

/// Writes all files into `dir` (created if needed). On failure removes the
/// files already written and throws IoError.
void write_bundle(const Bundle& bundle, const std::string& dir);

/// compute + render_bundle + write_bundle into config.output_dir.
Bundle run_pipeline(const RunConfig& config);

/// Same formatting the markdown uses: thousands separators, fixed decimals.
std::string format_grouped(double value, int decimals = 0);
/// Rounds to `digits` significant figures.
double round_significant(double value, int digits);

}  // namespace spanlab::report
