#include "spanlab/sensitivity.hpp"

#include <set>

#include <json.hpp>

#include "spanlab/csv.hpp"
#include "spanlab/errors.hpp"

namespace spanlab::sensitivity {
namespace {

void check_csf(double csf, const char* which) {
  if (!(csf > 0.0 && csf < 10.0)) {
    throw DomainError(std::string(which) + " must be in (0, 10)");
  }
}

double scenario_ecs(const Scenario& s, const ecs::EcsSchedule& anchors,
                    const ReadingParams& reading, int year, double csf) {
  ecs::EcsAnchor a = anchors.anchor(year);
  if (auto it = s.session_overrides.find(year); it != s.session_overrides.end()) {
    a.session_seconds = it->second;
  }
  a.csf = csf;
  ecs::check_anchor(a);
  return ecs::ecs_at_anchor(a, reading);
}

}  // namespace

ScenarioResult run_scenario(const Scenario& scenario, const ecs::EcsSchedule& anchors,
                            const ReadingParams& reading) {
  check_csf(scenario.csf_2004, "csf_2004");
  check_csf(scenario.csf_2022, "csf_2022");
  check_csf(scenario.csf_2026, "csf_2026");
  if (!(scenario.ai_2026_tokens > 0.0) || !(scenario.qa_midpoint_tokens > 0.0)) {
    throw DomainError("scenario token counts must be positive");
  }
  ScenarioResult r;
  r.ecs_2004 = scenario_ecs(scenario, anchors, reading, 2004, scenario.csf_2004);
  r.ecs_2022 = scenario_ecs(scenario, anchors, reading, 2022, scenario.csf_2022);
  r.ecs_2026 = scenario_ecs(scenario, anchors, reading, 2026, scenario.csf_2026);
  r.raw_ratio = scenario.ai_2026_tokens / r.ecs_2026;
  r.qa_ratio = scenario.qa_midpoint_tokens / r.ecs_2026;
  return r;
}

std::vector<NamedResult> run_all(const std::vector<Scenario>& scenarios,
                                 const ecs::EcsSchedule& anchors, const ReadingParams& reading) {
  if (scenarios.empty()) throw DomainError("no scenarios");
  std::set<std::string> names;
  std::vector<NamedResult> out;
  out.reserve(scenarios.size());
  for (const auto& s : scenarios) {
    if (!names.insert(s.name).second) {
      throw DomainError("duplicate scenario name '" + s.name + "'");
    }
    try {
      out.push_back({s.name, s, run_scenario(s, anchors, reading)});
    } catch (const DomainError& e) {
      throw DomainError("scenario '" + s.name + "': " + e.what());
    }
  }
  return out;
}

std::vector<double> AxisRange::values() const {
  if (steps < 1) throw DomainError("axis needs at least one step");
  if (steps == 1) {
    if (low != high) throw DomainError("a one-step axis must have low == high");
    return {low};
  }
  if (!(low < high)) throw DomainError("axis range needs low < high");
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    v[static_cast<std::size_t>(i)] = low + (high - low) * i / (steps - 1);
  }
  v.back() = high;
  return v;
}

const ScenarioResult& SweepGrid::at(std::size_t csf_index, std::size_t session_index) const {
  return results.at(csf_index * session_2026_values.size() + session_index);
}

SweepGrid sweep(const AxisRange& csf_2026, const AxisRange& session_2026, const Scenario& fixed,
                const ecs::EcsSchedule& anchors, const ReadingParams& reading) {
  SweepGrid grid;
  grid.csf_2026_values = csf_2026.values();
  grid.session_2026_values = session_2026.values();
  grid.results.reserve(grid.csf_2026_values.size() * grid.session_2026_values.size());
  for (double csf : grid.csf_2026_values) {
    for (double session : grid.session_2026_values) {
      Scenario s = fixed;
      s.csf_2026 = csf;
      s.session_overrides[2026] = session;
      grid.results.push_back(run_scenario(s, anchors, reading));
    }
  }
  return grid;
}

std::vector<Scenario> parse_scenarios(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenarios: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("scenarios: expected a JSON array");

  std::vector<Scenario> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    const std::string where = "scenarios[" + std::to_string(i) + "]";
    try {
      Scenario s;
      s.name = obj.at("name").get<std::string>();
      s.csf_2004 = obj.at("csf_2004").get<double>();
      s.csf_2022 = obj.at("csf_2022").get<double>();
      s.csf_2026 = obj.at("csf_2026").get<double>();
      s.ai_2026_tokens = obj.value("ai_2026_tokens", s.ai_2026_tokens);
      s.qa_midpoint_tokens = obj.value("qa_midpoint_tokens", s.qa_midpoint_tokens);
      if (obj.contains("session_overrides") && !obj["session_overrides"].is_null()) {
        for (const auto& [year, seconds] : obj["session_overrides"].items()) {
          s.session_overrides[std::stoi(year)] = seconds.get<double>();
        }
      }
      if (!names.insert(s.name).second) {
        throw ParseError(where + ": duplicate scenario name '" + s.name + "'");
      }
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    } catch (const std::invalid_argument&) {
      throw ParseError(where + ": session_overrides keys must be years");
    }
  }
  return out;
}

std::string results_to_csv(const std::vector<NamedResult>& results) {
  std::string out = "scenario,csf_2004,csf_2022,csf_2026,ecs_2004,ecs_2026,raw_ratio,qa_ratio\n";
  for (const auto& r : results) {
    out += csv::escape(r.name) + ',' + csv::format_double(r.scenario.csf_2004) + ',' +
           csv::format_double(r.scenario.csf_2022) + ',' +
           csv::format_double(r.scenario.csf_2026) + ',' + csv::format_double(r.result.ecs_2004) +
           ',' + csv::format_double(r.result.ecs_2026) + ',' +
           csv::format_double(r.result.raw_ratio) + ',' + csv::format_double(r.result.qa_ratio) +
           '\n';
  }
  return out;
}

}  // namespace spanlab::sensitivity
