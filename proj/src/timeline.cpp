#include "spanlab/timeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include <json.hpp>

#include "spanlab/csv.hpp"
#include "spanlab/errors.hpp"

namespace spanlab::timeline {
namespace {

constexpr int kMinYear = 2017;
constexpr int kMaxYear = 2035;

bool date_less(const ModelRelease& a, const ModelRelease& b) {
  return std::tie(a.release_year, a.release_month) < std::tie(b.release_year, b.release_month);
}

ParseError row_error(std::size_t row, int line, const std::string& what) {
  return ParseError("row " + std::to_string(row) + " (line " + std::to_string(line) + "): " + what);
}

std::optional<std::pair<int, int>> parse_date(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  int year = 0;
  int month = 0;
  auto y = std::from_chars(text.data(), text.data() + 4, year);
  auto m = std::from_chars(text.data() + 5, text.data() + 7, month);
  if (y.ec != std::errc{} || y.ptr != text.data() + 4) return std::nullopt;
  if (m.ec != std::errc{} || m.ptr != text.data() + 7) return std::nullopt;
  if (month < 1 || month > 12) return std::nullopt;
  return std::pair{year, month};
}

std::string format_date(int year, int month) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

}  // namespace

TimelineDataset::TimelineDataset(std::vector<ModelRelease> releases, std::string provenance)
    : releases_(std::move(releases)), provenance_(std::move(provenance)) {
  if (releases_.empty()) throw DomainError("no rows");
  std::stable_sort(releases_.begin(), releases_.end(), date_less);
}

void TimelineDataset::add(ModelRelease release) {
  auto it = std::upper_bound(releases_.begin(), releases_.end(), release, date_less);
  releases_.insert(it, std::move(release));
}

bool is_excluded(const ModelRelease& release, const std::vector<std::string>& exclusions) {
  return std::find(exclusions.begin(), exclusions.end(), release.model_name) != exclusions.end();
}

TimelineDataset parse_timeline(std::string_view text, std::string provenance) {
  const csv::Table table = csv::parse(text);
  if (table.header.empty() || table.rows.empty()) throw ParseError("no rows");
  csv::require_header(table, {"date", "model", "max_context_tokens", "source"});

  std::vector<ModelRelease> releases;
  releases.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& fields = table.rows[i];
    const int line = table.line_numbers[i];
    const std::size_t row = i + 1;
    if (fields.size() < 4) throw row_error(row, line, "missing column");

    auto date = parse_date(fields[0]);
    if (!date) throw row_error(row, line, "malformed date '" + fields[0] + "'");

    std::int64_t tokens = 0;
    const std::string& tok = fields[2];
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), tokens);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
      throw row_error(row, line, "malformed token count '" + tok + "'");
    }
    if (tokens <= 0) throw row_error(row, line, "non-positive token count");

    releases.push_back({date->first, date->second, fields[1], tokens, fields[3]});
  }
  return TimelineDataset(std::move(releases), std::move(provenance));
}

std::string serialize_timeline(const TimelineDataset& dataset) {
  std::string out = "date,model,max_context_tokens,source\n";
  for (const auto& r : dataset.releases()) {
    out += format_date(r.release_year, r.release_month);
    out += ',';
    out += csv::escape(r.model_name);
    out += ',';
    out += std::to_string(r.max_context_tokens);
    out += ',';
    out += csv::escape(r.source_tag);
    out += '\n';
  }
  return out;
}

namespace {

bool dated_by(const ModelRelease& r, int year, int as_of_month) {
  return r.release_year < year || (r.release_year == year && r.release_month <= as_of_month);
}

struct Launch {
  int year = 0;
  int count = 0;
  std::int64_t max_tokens = 0;
};

/// Models shipped more than once under the same name: launch year and the
/// largest window any of their releases reached.
std::map<std::string, Launch> relaunches(const TimelineDataset& dataset,
                                         const std::vector<std::string>& exclusions) {
  std::map<std::string, Launch> launches;
  for (const auto& r : dataset.releases()) {
    if (is_excluded(r, exclusions)) continue;
    auto [it, inserted] = launches.try_emplace(r.model_name, Launch{r.release_year, 0, 0});
    ++it->second.count;
    it->second.max_tokens = std::max(it->second.max_tokens, r.max_context_tokens);
  }
  std::erase_if(launches, [](const auto& kv) { return kv.second.count < 2; });
  return launches;
}

}  // namespace

YearlySeries leading_context_by_year(const TimelineDataset& dataset, int first_year,
                                     int last_year, const std::vector<std::string>& exclusions,
                                     int as_of_month) {
  if (first_year > last_year) throw DomainError("first year after last year");
  if (as_of_month < 1 || as_of_month > 12) throw DomainError("as_of_month must be in 1-12");

  const auto launches = relaunches(dataset, exclusions);

  std::vector<YearValue> points;
  for (int year = first_year; year <= last_year; ++year) {
    std::int64_t frontier = 0;
    for (const auto& r : dataset.releases()) {
      if (!dated_by(r, year, as_of_month)) break;
      if (!is_excluded(r, exclusions)) frontier = std::max(frontier, r.max_context_tokens);
    }
    if (frontier == 0) {
      throw DomainError("no frontier value at or before " + std::to_string(year));
    }
    std::int64_t upper = frontier;
    for (const auto& [name, launch] : launches) {
      if (launch.year == year) upper = std::max(upper, launch.max_tokens);
    }
    YearValue p{year, static_cast<double>(frontier), std::nullopt};
    if (upper > frontier) p.upper = static_cast<double>(upper);
    points.push_back(p);
  }
  return YearlySeries(std::move(points));
}

std::string leading_model(const TimelineDataset& dataset, int year,
                          const std::vector<std::string>& exclusions, int as_of_month) {
  // Latest release reaching the frontier; the first listed wins within a month.
  const ModelRelease* best = nullptr;
  for (const auto& r : dataset.releases()) {
    if (!dated_by(r, year, as_of_month)) break;
    if (is_excluded(r, exclusions)) continue;
    if (best == nullptr || r.max_context_tokens > best->max_context_tokens ||
        (r.max_context_tokens == best->max_context_tokens &&
         std::tie(r.release_year, r.release_month) >
             std::tie(best->release_year, best->release_month))) {
      best = &r;
    }
  }
  if (best == nullptr) throw DomainError("no frontier value at or before " + std::to_string(year));
  return best->model_name;
}

std::optional<std::string> range_model(const TimelineDataset& dataset, int year,
                                       const std::vector<std::string>& exclusions) {
  std::optional<std::pair<std::string, std::int64_t>> best;
  for (const auto& [name, launch] : relaunches(dataset, exclusions)) {
    if (launch.year == year && (!best || launch.max_tokens > best->second)) {
      best = std::pair{name, launch.max_tokens};
    }
  }
  if (!best) return std::nullopt;
  return best->first;
}

std::vector<Finding> validate(const TimelineDataset& dataset) {
  std::vector<Finding> findings;
  std::set<std::tuple<int, int, std::string>> seen;
  std::set<int> years;
  const auto& releases = dataset.releases();
  for (std::size_t i = 0; i < releases.size(); ++i) {
    const auto& r = releases[i];
    const int row = static_cast<int>(i + 1);
    const std::string where = format_date(r.release_year, r.release_month) + " " + r.model_name;
    if (!seen.emplace(r.release_year, r.release_month, r.model_name).second) {
      findings.push_back({"duplicate entry", row, where});
    }
    if (r.max_context_tokens < 1) {
      findings.push_back({"non-positive context", row,
                          where + ": " + std::to_string(r.max_context_tokens)});
    }
    if (r.release_year < kMinYear || r.release_year > kMaxYear) {
      findings.push_back({"year out of range", row, where});
    }
    if (r.release_month < 1 || r.release_month > 12) {
      findings.push_back({"month out of range", row, where});
    }
    if (r.model_name.empty()) {
      findings.push_back({"empty model name", row, where});
    }
    years.insert(r.release_year);
  }
  if (!years.empty()) {
    for (int y = *years.begin(); y <= *years.rbegin(); ++y) {
      if (!years.contains(y)) {
        findings.push_back({"coverage gap", 0, "no release dated " + std::to_string(y)});
      }
    }
  }
  return findings;
}

std::string findings_to_json_lines(const std::vector<Finding>& findings) {
  std::string out;
  for (const auto& f : findings) {
    nlohmann::ordered_json j;
    j["kind"] = f.kind;
    j["row"] = f.row;
    j["message"] = f.message;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace spanlab::timeline
