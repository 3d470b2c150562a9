#include "spanlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "spanlab/csv.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/svg.hpp"
#include "spanlab/timeline.hpp"

#ifndef SPANLAB_VERSION
#define SPANLAB_VERSION "0.0.0"
#endif

namespace spanlab::report {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Published values the report sets next to the computed ones.
constexpr double kPublishedLambda = 0.59;
constexpr double kPublishedCiLow = 0.51;
constexpr double kPublishedCiHigh = 0.67;
constexpr double kPublishedBootLow = 0.48;
constexpr double kPublishedBootHigh = 0.71;

/// Runs `fn`, rethrowing any toolkit error with the stage name prepended.
template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  const std::string prefix = std::string("stage: ") + name + ", ";
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(prefix + e.what());
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  } catch (const DomainError& e) {
    throw DomainError(prefix + e.what());
  }
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

/// Settings that change results. Paths and the output directory are left out
/// so the hash depends on file contents, not where they live.
json settings_json(const RunConfig& c) {
  json j;
  j["exclusions"] = c.exclusions;
  j["frontier_as_of_month"] = c.frontier_as_of_month;
  j["fit_preset"] = std::string(growthfit::preset_name(c.fit_preset));
  j["range_year_value"] = c.fit_range_upper ? "upper" : "lower";
  j["qa_band"] = {{"low", c.qa_band.low_tokens},
                  {"midpoint", c.qa_band.midpoint_tokens},
                  {"high", c.qa_band.high_tokens}};
  j["reading"] = {{"words_per_minute", c.reading.words_per_minute()},
                  {"tokens_per_word", c.reading.tokens_per_word()}};
  j["bootstrap_resamples"] = c.bootstrap_resamples;
  j["seed"] = c.seed;
  j["first_year"] = c.first_year;
  j["last_year"] = c.last_year;
  json loop;
  loop["periods"] = c.loop.periods;
  loop["intervene_at"] = c.loop.intervene_at ? json(*c.loop.intervene_at) : json(nullptr);
  loop["intervention_floor_factor"] = c.loop.intervention_floor_factor;
  loop["classify_tolerance"] = c.loop.classify_tolerance;
  j["loop"] = loop;
  return j;
}

std::string trim_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// Shortest representation with at least one decimal: 2.0, 1.05, 0.84.
std::string format_factor(double v) {
  std::string s = csv::format_double(v);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string format_ratio(double r) {
  if (r < 1.0) return trim_fixed(r, 2);
  if (r < 10.0) return trim_fixed(r, 1);
  return format_grouped(r, 0);
}

std::string header_line(const PipelineResults& r) {
  return "spanlab " + std::string(toolkit_version()) + " config_hash=" + r.config_hash +
         " seed=" + std::to_string(r.config.seed);
}

std::string csv_header(const PipelineResults& r) { return "# " + header_line(r) + "\n"; }

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string table1_csv(const PipelineResults& r) {
  std::string out = csv_header(r) + "parameter,year,value,source\n";
  const auto& reading = r.config.reading;
  out += "words_per_minute,," + csv::format_double(reading.words_per_minute()) + ",reading-rate meta-analysis mean\n";
  out += "tokens_per_word,," + csv::format_double(reading.tokens_per_word()) + ",cl100k_base average\n";
  out += "tokens_per_second,," + csv::format_double(tokens_per_second(reading)) + ",computed\n";
  for (const auto& a : r.anchors) {
    const std::string y = std::to_string(a.year);
    const std::string src = csv::escape(a.provenance);
    out += "session_seconds," + y + ',' + csv::format_double(a.session_seconds) + ',' + src + '\n';
    out += "csf," + y + ',' + csv::format_double(a.csf) + ',' + src + '\n';
    out += "ecs_tokens," + y + ',' + csv::format_double(ecs::ecs_at_anchor(a, reading)) +
           ",computed\n";
  }
  return out;
}

json fit_to_json(const PresetFit& pf) {
  json j;
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  j["preset"] = std::string(growthfit::preset_name(pf.preset));
  j["lambda"] = pf.fit.lambda;
  j["c0"] = pf.fit.c0;
  j["ci_low"] = pf.fit.ci_low;
  j["ci_high"] = pf.fit.ci_high;
  j["doubling_months"] = finite_or_null(pf.fit.doubling_months);
  j["cagr_continuous"] = pf.fit.cagr_continuous;
  j["r_squared"] = pf.fit.r_squared;
  j["n_points"] = pf.fit.n_points;
  j["bootstrap_low"] = pf.bootstrap.low;
  j["bootstrap_high"] = pf.bootstrap.high;
  return j;
}

std::string fit_json(const PipelineResults& r) {
  json j;
  j["meta"] = {{"toolkit_version", std::string(toolkit_version())},
               {"config_hash", r.config_hash},
               {"seed", r.config.seed},
               {"bootstrap_resamples", r.config.bootstrap_resamples},
               {"exclusions", r.config.exclusions},
               {"base_year", r.config.first_year}};
  j["selected_preset"] = std::string(growthfit::preset_name(r.config.fit_preset));
  j["published"] = {{"lambda", kPublishedLambda},
                    {"ci_low", kPublishedCiLow},
                    {"ci_high", kPublishedCiHigh},
                    {"bootstrap_low", kPublishedBootLow},
                    {"bootstrap_high", kPublishedBootHigh},
                    {"doubling_months", growthfit::doubling_time_months(kPublishedLambda)},
                    {"cagr_continuous", growthfit::cagr(kPublishedLambda)}};
  json fits = json::array();
  for (const auto& pf : r.fits) fits.push_back(fit_to_json(pf));
  j["fits"] = fits;
  return j.dump(2) + "\n";
}

const PresetFit& selected_fit(const PipelineResults& r) {
  for (const auto& pf : r.fits) {
    if (pf.preset == r.config.fit_preset) return pf;
  }
  throw DomainError("selected preset missing from results");
}

}  // namespace

std::string_view toolkit_version() { return SPANLAB_VERSION; }

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const double scale = std::pow(10.0, digits - 1 - magnitude);
  return std::round(value * scale) / scale;
}

std::string format_grouped(double value, int decimals) {
  std::string s = trim_fixed(std::abs(value), decimals);
  const auto dot = s.find('.');
  std::string int_part = s.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : s.substr(dot);
  std::string grouped;
  for (std::size_t i = 0; i < int_part.size(); ++i) {
    if (i > 0 && (int_part.size() - i) % 3 == 0) grouped.push_back(',');
    grouped.push_back(int_part[i]);
  }
  const bool negative = value < 0.0 && s.find_first_not_of("0.,") != std::string::npos;
  return (negative ? "-" : "") + grouped + frac;
}

void check_config(const RunConfig& c) {
  if (c.bootstrap_resamples < 100) throw DomainError("bootstrap_resamples must be at least 100");
  if (c.first_year > c.last_year) throw DomainError("first_year after last_year");
  if (c.frontier_as_of_month < 1 || c.frontier_as_of_month > 12) {
    throw DomainError("frontier_as_of_month must be in 1-12");
  }
  if (c.first_year < ecs::kFirstYear || c.last_year > ecs::kLastYear) {
    throw DomainError("year range must lie within 2004-2026");
  }
  if (c.loop.periods < 1) throw DomainError("loop periods must be at least 1");
  if (!(c.loop.classify_tolerance > 0.0)) throw DomainError("classify tolerance must be positive");
  if (c.loop.intervene_at && (*c.loop.intervene_at < 0 || *c.loop.intervene_at >= c.loop.periods)) {
    throw DomainError("intervene_at must fall inside the simulated periods");
  }
  divergence::check_band(c.qa_band);
}

RunConfig config_from_json(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: expected a JSON object");

  RunConfig c;
  try {
    c.timeline_path = resolve(j.value("timeline_path", std::string("timeline.csv")), base_dir);
    c.anchors_path = resolve(j.value("anchors_path", std::string("ecs_anchors.csv")), base_dir);
    c.asserted_ecs_path =
        resolve(j.value("asserted_ecs_path", std::string("ecs_asserted.csv")), base_dir);
    c.scenarios_path = resolve(j.value("scenarios_path", std::string("scenarios.json")), base_dir);
    c.exclusions = j.value("exclusions", std::vector<std::string>{});
    c.frontier_as_of_month = j.value("frontier_as_of_month", c.frontier_as_of_month);
    c.fit_preset = growthfit::parse_preset(j.value("fit_preset", std::string("table2-frontier")));
    const std::string range = j.value("range_year_value", std::string("upper"));
    if (range != "upper" && range != "lower") {
      throw ParseError("config: range_year_value must be 'upper' or 'lower'");
    }
    c.fit_range_upper = range == "upper";
    if (j.contains("qa_band")) {
      const auto& b = j["qa_band"];
      c.qa_band.low_tokens = b.value("low", c.qa_band.low_tokens);
      c.qa_band.midpoint_tokens = b.value("midpoint", c.qa_band.midpoint_tokens);
      c.qa_band.high_tokens = b.value("high", c.qa_band.high_tokens);
    }
    if (j.contains("reading")) {
      const auto& r = j["reading"];
      c.reading = ReadingParams(r.value("words_per_minute", ReadingParams::kDefaultWordsPerMinute),
                                r.value("tokens_per_word", ReadingParams::kDefaultTokensPerWord));
    }
    c.bootstrap_resamples = j.value("bootstrap_resamples", c.bootstrap_resamples);
    c.seed = j.value("seed", c.seed);
    c.output_dir = resolve(j.value("output_dir", c.output_dir), base_dir);
    c.first_year = j.value("first_year", c.first_year);
    c.last_year = j.value("last_year", c.last_year);
    if (j.contains("loop")) {
      const auto& l = j["loop"];
      c.loop.periods = l.value("periods", c.loop.periods);
      if (l.contains("intervene_at") && !l["intervene_at"].is_null()) {
        c.loop.intervene_at = l["intervene_at"].get<int>();
      }
      c.loop.intervention_floor_factor =
          l.value("intervention_floor_factor", c.loop.intervention_floor_factor);
      c.loop.classify_tolerance = l.value("classify_tolerance", c.loop.classify_tolerance);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  const std::string text = csv::read_file(path);
  return config_from_json(text, fs::path(path).parent_path().string());
}

std::string config_to_json(const RunConfig& c) {
  json j = settings_json(c);
  j["timeline_path"] = c.timeline_path;
  j["anchors_path"] = c.anchors_path;
  j["asserted_ecs_path"] = c.asserted_ecs_path;
  j["scenarios_path"] = c.scenarios_path;
  j["output_dir"] = c.output_dir;
  return j.dump(2);
}

std::string default_config_path(const std::string& data_dir) {
  return (fs::path(data_dir) / "default_config.json").string();
}

PipelineResults compute(const RunConfig& config) {
  PipelineResults r;
  r.config = config;
  stage("config", [&] { check_config(config); });

  std::uint64_t hash = fnv1a(settings_json(config).dump());

  const auto dataset = stage("timeline", [&] {
    const std::string text = csv::read_file(config.timeline_path);
    hash = fnv1a(text, hash);
    auto ds = timeline::parse_timeline(text, config.timeline_path);
    r.ai_series = timeline::leading_context_by_year(ds, config.first_year, config.last_year,
                                                    config.exclusions, config.frontier_as_of_month);
    for (const auto& p : r.ai_series) {
      auto relaunched = p.upper ? timeline::range_model(ds, p.year, config.exclusions)
                                : std::nullopt;
      r.leading_models.push_back(relaunched ? *relaunched
                                            : timeline::leading_model(ds, p.year, config.exclusions,
                                                                      config.frontier_as_of_month));
    }
    return ds;
  });

  const auto schedule = stage("ecs", [&] {
    const std::string anchors_text = csv::read_file(config.anchors_path);
    const std::string asserted_text = csv::read_file(config.asserted_ecs_path);
    hash = fnv1a(anchors_text, hash);
    hash = fnv1a(asserted_text, hash);
    ecs::EcsSchedule s(ecs::parse_anchors(anchors_text), ecs::parse_asserted(asserted_text),
                       config.reading);
    r.anchors = s.anchors();
    r.ecs_asserted = ecs::ecs_series(s, ecs::SeriesPolicy::asserted);
    r.ecs_anchored = ecs::ecs_series(s, ecs::SeriesPolicy::anchored);
    const std::pair<int, int> periods[] = {{2017, 2026}, {2004, 2026}, {2004, 2017}, {2017, 2023}};
    const double published[] = {-1300.0, -645.0, -190.0, -1500.0};
    for (std::size_t i = 0; i < std::size(periods); ++i) {
      const auto [from, to] = periods[i];
      r.decline_rates.push_back(
          {from, to, ecs::mean_decline_rate(r.ecs_asserted, from, to), published[i]});
    }
    return s;
  });

  stage("growthfit", [&] {
    for (auto preset : growthfit::kAllPresets) {
      const auto obs = growthfit::preset_observations(dataset, preset, config.exclusions,
                                                      config.first_year, config.last_year,
                                                      config.fit_range_upper,
                                                      config.frontier_as_of_month);
      r.fits.push_back({preset, growthfit::fit_exponential(obs),
                        growthfit::bootstrap_ci(obs, config.bootstrap_resamples, config.seed)});
    }
  });

  stage("divergence", [&] {
    const auto ecs_window = r.ecs_asserted.slice(config.first_year, config.last_year);
    r.rows = divergence::ratio_series(r.ai_series, ecs_window, config.qa_band);
    r.crossover = divergence::crossover_year(r.rows);
  });

  stage("sensitivity", [&] {
    const std::string text = csv::read_file(config.scenarios_path);
    hash = fnv1a(text, hash);
    const auto scenarios = sensitivity::parse_scenarios(text);
    if (!scenarios.empty()) {
      r.scenarios = sensitivity::run_all(scenarios, schedule, config.reading);
    }
  });

  stage("loopsim", [&] {
    const double lambda = selected_fit(r).fit.lambda;
    r.loop_params = loopsim::default_params(lambda);
    loopsim::LoopState initial = loopsim::default_initial_state();
    if (r.ai_series.contains(2022)) {
      const auto& p = r.ai_series.at(2022);
      initial.ai_capability = p.upper.value_or(p.value);
    }
    std::optional<loopsim::Intervention> intervention;
    if (config.loop.intervene_at) {
      intervention = loopsim::Intervention{
          *config.loop.intervene_at,
          config.loop.intervention_floor_factor * r.loop_params.maintenance_practice};
    }
    r.trajectory = loopsim::simulate(initial, r.loop_params, config.loop.periods, intervention);
    r.loop_class = loopsim::classify(r.trajectory, config.loop.classify_tolerance);
  });

  r.config_hash = hex64(hash);
  return r;
}

std::string render_tables(const PipelineResults& r) {
  const auto& c = r.config;
  std::string md;
  md += "# Context span divergence report\n\n";
  md += "- toolkit: spanlab " + std::string(toolkit_version()) + "\n";
  md += "- config hash: `" + r.config_hash + "`\n";
  md += "- seed: " + std::to_string(c.seed) + " (bootstrap resamples: " +
        std::to_string(c.bootstrap_resamples) + ")\n";
  md += "- frontier: largest window released by month " + std::to_string(c.frontier_as_of_month) +
        " of each year\n";
  md += "- frontier exclusions: " + (c.exclusions.empty() ? std::string("none") : join(c.exclusions, ", ")) + "\n";
  md += "- fit preset: " + std::string(growthfit::preset_name(c.fit_preset)) +
        " (range years fitted at the " + (c.fit_range_upper ? "upper" : "lower") + " value)\n";
  md += "- quality-adjusted band: " + format_grouped(c.qa_band.low_tokens) + "-" +
        format_grouped(c.qa_band.high_tokens) + " tokens (midpoint " +
        format_grouped(c.qa_band.midpoint_tokens) + ")\n\n";

  // Table 1
  const double rate = tokens_per_second(c.reading);
  md += "## Table 1: ECS token conversion parameters\n\n";
  md += "| Parameter | Value |\n|---|---|\n";
  md += "| Mean adult reading rate | " + format_factor(c.reading.words_per_minute()) + " wpm |\n";
  md += "| Tokens per English word | " + format_factor(c.reading.tokens_per_word()) + " |\n";
  md += "| Derived reading rate (R_tok) | " + trim_fixed(rate, 2) + " tokens/s |\n";
  for (const auto& a : r.anchors) {
    md += "| Session reading duration S, " + std::to_string(a.year) + " | " +
          format_grouped(a.session_seconds) + " s |\n";
  }
  for (const auto& a : r.anchors) {
    md += "| CSF, " + std::to_string(a.year) + " | " + format_factor(a.csf) + " |\n";
  }
  for (const auto& a : r.anchors) {
    const double e = ecs::ecs_at_anchor(a, c.reading);
    md += "| Human ECS, " + std::to_string(a.year) + " | " +
          format_grouped(round_significant(e, 2)) + " tokens (" + format_grouped(e, 1) + ") |\n";
  }
  md += "\n";

  // Table 2
  md += "## Table 2: AI context window vs. human ECS, " + std::to_string(c.first_year) + "-" +
        std::to_string(c.last_year) + "\n\n";
  md += "| Year | Leading Model | AI Context | Human ECS | Ratio | QA Ratio |\n";
  md += "|---|---|---:|---:|---:|---:|\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    std::string ai = format_grouped(row.ai_tokens);
    std::string ratio = format_ratio(row.raw_ratio);
    std::string qa = format_ratio(row.qa_ratio);
    if (row.ai_tokens_alt) {
      ai += "-" + format_grouped(*row.ai_tokens_alt);
      ratio += "-" + format_ratio(*row.raw_ratio_alt);
      qa += "-" + format_ratio(*row.qa_ratio_alt);
    }
    const std::string model = i < r.leading_models.size() ? r.leading_models[i] : "";
    md += "| " + std::to_string(row.year) + " | " + model + " | " + ai + " | " +
          format_grouped(row.ecs_tokens) + " | " + ratio + "x | " + qa + "x |\n";
  }
  md += "\n";
  if (!r.rows.empty()) {
    const auto& last = r.rows.back();
    const double low = c.qa_band.low_tokens / last.ecs_tokens;
    const double high = c.qa_band.high_tokens / last.ecs_tokens;
    md += "Crossover: " + divergence::describe(r.crossover) + ".\n\n";
    md += "Quality-adjusted " + std::to_string(last.year) + " ratio: " +
          format_ratio(c.qa_band.midpoint_tokens / last.ecs_tokens) + "x at the band midpoint, " +
          trim_fixed(low, 1) + "-" + trim_fixed(high, 1) + "x across the band.\n\n";
    md += "Note: a " + std::to_string(last.year) + " frontier of 1,000,000 tokens instead of " +
          format_grouped(last.ai_tokens) + " gives a raw ratio of " +
          format_ratio(1'000'000.0 / last.ecs_tokens) + "x; the headline uses the leading model.\n\n";
  }
  if (r.ecs_asserted.contains(2004) && r.ecs_asserted.contains(c.first_year) &&
      r.ai_series.contains(c.first_year)) {
    md += "Baselines: the chart starts at " + std::to_string(c.first_year) + " (AI " +
          format_grouped(r.ai_series.value_at(c.first_year)) + " tokens, human ECS " +
          format_grouped(r.ecs_asserted.value_at(c.first_year)) +
          " tokens); the long-run comparison uses the 2004 human ECS of " +
          format_grouped(round_significant(r.ecs_asserted.value_at(2004), 2)) + " tokens.\n\n";
  }

  // ECS(2022) callout and policy comparison
  if (r.ecs_anchored.contains(2022) && r.ecs_asserted.contains(2022)) {
    const double anchored = r.ecs_anchored.value_at(2022);
    const double asserted = r.ecs_asserted.value_at(2022);
    md += "> **ECS(2022) discrepancy.** The anchor formula gives " + format_grouped(anchored) +
          " tokens (about " + format_grouped(round_significant(anchored, 2)) +
          ") while the tabulated yearly series uses about " + format_grouped(asserted) +
          ". Table 2 uses the tabulated value; the span for 2022 is " +
          format_grouped(round_significant(anchored, 2)) + "-" + format_grouped(asserted) +
          " tokens.\n\n";
  }
  md += "| Year | ECS (tabulated) | ECS (anchored) |\n|---|---:|---:|\n";
  for (int year : {2004, 2010, 2017, 2020, 2022, 2024, 2026}) {
    if (!r.ecs_asserted.contains(year) || !r.ecs_anchored.contains(year)) continue;
    md += "| " + std::to_string(year) + " | " + format_grouped(r.ecs_asserted.value_at(year)) +
          " | " + format_grouped(r.ecs_anchored.value_at(year)) + " |\n";
  }
  md += "\n";

  md += "## ECS decline rates (tabulated series)\n\n";
  md += "| Period | Computed (tokens/yr) | Published (tokens/yr) |\n|---|---:|---:|\n";
  for (const auto& d : r.decline_rates) {
    md += "| " + std::to_string(d.from) + "-" + std::to_string(d.to) + " | " +
          format_grouped(d.tokens_per_year, 1) + " | " + format_grouped(d.published_value) + " |\n";
  }
  md += "\n";

  // Growth model
  md += "## Exponential growth model\n\n";
  md += "| Source | n | lambda (1/yr) | 95% CI | Bootstrap 95% CI | Doubling (months) | CAGR | R^2 |\n";
  md += "|---|---:|---:|---|---|---:|---:|---:|\n";
  md += "| published | 9 | " + trim_fixed(kPublishedLambda, 2) + " | " +
        trim_fixed(kPublishedCiLow, 2) + "-" + trim_fixed(kPublishedCiHigh, 2) + " | " +
        trim_fixed(kPublishedBootLow, 2) + "-" + trim_fixed(kPublishedBootHigh, 2) + " | " +
        trim_fixed(growthfit::doubling_time_months(kPublishedLambda), 2) + " | " +
        trim_fixed(100.0 * growthfit::cagr(kPublishedLambda), 1) + "% | - |\n";
  for (const auto& pf : r.fits) {
    const auto& f = pf.fit;
    md += "| " + std::string(growthfit::preset_name(pf.preset)) + " | " +
          std::to_string(f.n_points) + " | " + trim_fixed(f.lambda, 3) + " | " +
          trim_fixed(f.ci_low, 3) + "-" + trim_fixed(f.ci_high, 3) + " | " +
          trim_fixed(pf.bootstrap.low, 3) + "-" + trim_fixed(pf.bootstrap.high, 3) + " | " +
          (std::isfinite(f.doubling_months) ? trim_fixed(f.doubling_months, 2) : "-") + " | " +
          trim_fixed(100.0 * f.cagr_continuous, 1) + "% | " + trim_fixed(f.r_squared, 3) + " |\n";
  }
  md += "\n";
  if (!r.fits.empty()) {
    md += "Published lambda = " + trim_fixed(kPublishedLambda, 2) + "/yr vs. computed lambda = " +
          trim_fixed(selected_fit(r).fit.lambda, 3) + "/yr (" +
          std::string(growthfit::preset_name(c.fit_preset)) +
          "). No preset built from the timeline reproduces the published rate.\n\n";
  }

  // Table 3
  md += "## Table 3: Sensitivity of human ECS to CSF assumptions\n\n";
  if (r.scenarios.empty()) {
    md += "no scenarios run\n\n";
  } else {
    md += "| Scenario | CSF 2004 | CSF 2022 | CSF 2026 | ECS 2004 | ECS 2026 | Raw Ratio | QA Ratio |\n";
    md += "|---|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& s : r.scenarios) {
      // Ratios are quoted against the displayed (3 significant figure) ECS.
      const double ecs2004 = round_significant(s.result.ecs_2004, 3);
      const double ecs2026 = round_significant(s.result.ecs_2026, 3);
      md += "| " + s.name + " | " + format_factor(s.scenario.csf_2004) + " | " +
            format_factor(s.scenario.csf_2022) + " | " + format_factor(s.scenario.csf_2026) +
            " | " + format_grouped(ecs2004) + " | " + format_grouped(ecs2026) + " | " +
            format_grouped(s.scenario.ai_2026_tokens / ecs2026) + " | " +
            format_grouped(s.scenario.qa_midpoint_tokens / ecs2026) + " |\n";
    }
    md += "\nExact values (unrounded ECS) are in table3.csv.\n\n";
  }

  // Loop
  md += "## Delegation feedback loop (illustrative)\n\n";
  md += "Functional forms and coupling magnitudes are invented for illustration and carry no "
        "empirical calibration.\n\n";
  if (!r.trajectory.empty()) {
    const auto& first = r.trajectory.front();
    const auto& last = r.trajectory.back();
    md += "- periods: " + std::to_string(r.trajectory.size() - 1) + "\n";
    md += "- capability growth rate: " + trim_fixed(r.loop_params.capability_growth_rate, 3) +
          " per period\n";
    md += "- intervention: " +
          (c.loop.intervene_at ? "practice floor raised at period " + std::to_string(*c.loop.intervene_at)
                               : std::string("none")) +
          "\n";
    md += "- capacity: " + format_grouped(first.capacity, 1) + " -> " +
          format_grouped(last.capacity, 1) + " tokens\n";
    md += "- classification: " + std::string(loopsim::trajectory_name(r.loop_class)) + "\n";
  }
  return md;
}

Bundle render_bundle(const PipelineResults& r) {
  Bundle b;
  b.emplace_back("table1.csv", table1_csv(r));
  b.emplace_back("table2.csv", csv_header(r) + divergence::rows_to_csv(r.rows));
  b.emplace_back("table3.csv", csv_header(r) + sensitivity::results_to_csv(r.scenarios));
  b.emplace_back("fit.json", fit_json(r));
  b.emplace_back("divergence.svg",
                 svg::render_divergence_svg(r.rows, r.crossover, r.config.qa_band, header_line(r)));
  b.emplace_back("loop_trajectory.csv",
                 csv_header(r) + "# classification=" +
                     std::string(loopsim::trajectory_name(r.loop_class)) + "\n" +
                     loopsim::trajectory_to_csv(r.trajectory));
  b.emplace_back("report.md", "<!-- " + header_line(r) + " -->\n" + render_tables(r));
  return b;
}

void write_bundle(const Bundle& bundle, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  std::vector<fs::path> written;
  for (const auto& [name, contents] : bundle) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (out) out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (out) out.close();
    if (!out) {
      for (const auto& p : written) fs::remove(p, ec);
      fs::remove(path, ec);
      throw IoError("failed writing " + path.string());
    }
    written.push_back(path);
  }
}

Bundle run_pipeline(const RunConfig& config) {
  Bundle bundle = render_bundle(compute(config));
  stage("output", [&] { write_bundle(bundle, config.output_dir); });
  return bundle;
}

}  // namespace spanlab::report
