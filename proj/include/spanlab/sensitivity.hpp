#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spanlab/conversion.hpp"
#include "spanlab/ecs.hpp"

namespace spanlab::sensitivity {

struct Scenario {
  std::string name;
  double csf_2004 = 2.0;
  double csf_2022 = 1.5;
  double csf_2026 = 1.2;
  std::map<int, double> session_overrides;  // year -> seconds
  double ai_2026_tokens = 2'000'000.0;
  double qa_midpoint_tokens = 150'000.0;
};

struct ScenarioResult {
  double ecs_2004 = 0.0;
  double ecs_2022 = 0.0;
  double ecs_2026 = 0.0;
  double raw_ratio = 0.0;  // ai_2026_tokens / ecs_2026
  double qa_ratio = 0.0;   // qa_midpoint_tokens / ecs_2026

  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

struct NamedResult {
  std::string name;
  Scenario scenario;
  ScenarioResult result;
};

/// ECS = S * R_tok * CSF at the 2004, 2022 and 2026 anchors with the scenario's CSF values and
/// any session overrides.
ScenarioResult run_scenario(const Scenario& scenario, const ecs::EcsSchedule& anchors,
                            const ReadingParams& reading);

/// Input order preserved. Throws DomainError "no scenarios" on an empty list
/// and prefixes any scenario failure with its name.
std::vector<NamedResult> run_all(const std::vector<Scenario>& scenarios,
                                 const ecs::EcsSchedule& anchors, const ReadingParams& reading);

/// Evenly spaced axis. steps == 1 means a fixed point (low == high).
struct AxisRange {
  double low = 0.0;
  double high = 0.0;
  int steps = 1;

  [[nodiscard]] std::vector<double> values() const;
};

struct SweepGrid {
  std::vector<double> csf_2026_values;
  std::vector<double> session_2026_values;
  /// Row-major: results[i * session_2026_values.size() + j].
  std::vector<ScenarioResult> results;

  [[nodiscard]] const ScenarioResult& at(std::size_t csf_index, std::size_t session_index) const;
};

SweepGrid sweep(const AxisRange& csf_2026, const AxisRange& session_2026, const Scenario& fixed,
                const ecs::EcsSchedule& anchors, const ReadingParams& reading);

/// JSON array of scenario objects.
std::vector<Scenario> parse_scenarios(std::string_view json_text);

/// `scenario,csf_2004,csf_2022,csf_2026,ecs_2004,ecs_2026,raw_ratio,qa_ratio`
std::string results_to_csv(const std::vector<NamedResult>& results);

}  // namespace spanlab::sensitivity
