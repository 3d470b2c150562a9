#include "spanlab/ecs.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>

#include "spanlab/csv.hpp"
#include "spanlab/errors.hpp"

namespace spanlab::ecs {
namespace {

int parse_int(const std::string& s, const std::string& what, int line) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": malformed " + what + " '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& s, const std::string& what, int line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": malformed " + what + " '" + s + "'");
  }
  return v;
}

double lerp(int y0, double v0, int y1, double v1, int year) {
  return v0 + (v1 - v0) * static_cast<double>(year - y0) / static_cast<double>(y1 - y0);
}

}  // namespace

void check_anchor(const EcsAnchor& anchor) {
  if (!(anchor.session_seconds > 0.0 && anchor.session_seconds < 36000.0)) {
    throw DomainError("anchor " + std::to_string(anchor.year) +
                      ": session_seconds must be in (0, 36000)");
  }
  if (!(anchor.csf > 0.0 && anchor.csf < 10.0)) {
    throw DomainError("anchor " + std::to_string(anchor.year) + ": csf must be in (0, 10)");
  }
}

double ecs_at_anchor(const EcsAnchor& anchor, const ReadingParams& reading) {
  return anchor.session_seconds * tokens_per_second(reading) * anchor.csf;
}

EcsSchedule::EcsSchedule(std::vector<EcsAnchor> anchors, std::map<int, double> asserted,
                         ReadingParams reading)
    : anchors_(std::move(anchors)), asserted_(std::move(asserted)), reading_(reading) {
  if (anchors_.empty()) throw DomainError("schedule needs at least one anchor");
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    check_anchor(anchors_[i]);
    if (i > 0 && anchors_[i].year <= anchors_[i - 1].year) {
      throw DomainError("anchors must be sorted by year with unique years");
    }
  }
  std::optional<std::pair<int, double>> prev;
  for (const auto& [year, tokens] : asserted_) {
    if (!(tokens > 0.0)) {
      throw DomainError("asserted ECS for " + std::to_string(year) + " must be positive");
    }
    if (prev) {
      if (year != prev->first + 1) {
        throw DomainError("asserted ECS years must be consecutive (gap before " +
                          std::to_string(year) + ")");
      }
      if (!(tokens < prev->second)) {
        throw DomainError("asserted ECS must be strictly decreasing (at " +
                          std::to_string(year) + ")");
      }
    }
    prev = std::pair{year, tokens};
  }
}

const EcsAnchor& EcsSchedule::anchor(int year) const {
  auto it = std::find_if(anchors_.begin(), anchors_.end(),
                         [year](const EcsAnchor& a) { return a.year == year; });
  if (it == anchors_.end()) throw DomainError("no anchor for year " + std::to_string(year));
  return *it;
}

SeriesPolicy parse_policy(std::string_view name) {
  if (name == "anchored") return SeriesPolicy::anchored;
  if (name == "asserted") return SeriesPolicy::asserted;
  throw ParseError("unknown ECS policy '" + std::string(name) + "'");
}

std::string_view policy_name(SeriesPolicy policy) {
  return policy == SeriesPolicy::anchored ? "anchored" : "asserted";
}

YearlySeries ecs_series(const EcsSchedule& schedule, SeriesPolicy policy) {
  // Interpolation knots: (year, ECS) pairs the series passes through.
  std::vector<std::pair<int, double>> knots;
  if (policy == SeriesPolicy::anchored) {
    for (const auto& a : schedule.anchors()) {
      knots.emplace_back(a.year, ecs_at_anchor(a, schedule.reading()));
    }
  } else {
    const auto& asserted = schedule.asserted();
    if (asserted.empty()) throw DomainError("schedule has no asserted ECS values");
    const EcsAnchor& first = schedule.anchors().front();
    if (first.year < asserted.begin()->first) {
      knots.emplace_back(first.year, ecs_at_anchor(first, schedule.reading()));
    }
    for (const auto& [year, tokens] : asserted) knots.emplace_back(year, tokens);
  }
  if (knots.front().first > kFirstYear || knots.back().first < kLastYear) {
    throw DomainError("ECS knots do not cover " + std::to_string(kFirstYear) + "-" +
                      std::to_string(kLastYear));
  }

  std::vector<YearValue> points;
  std::size_t k = 0;
  for (int year = kFirstYear; year <= kLastYear; ++year) {
    while (k + 1 < knots.size() && knots[k + 1].first <= year) ++k;
    double value = knots[k].second;
    if (knots[k].first != year) {
      const auto& [y0, v0] = knots[k];
      const auto& [y1, v1] = knots[k + 1];
      value = lerp(y0, v0, y1, v1, year);
    }
    points.push_back({year, value, std::nullopt});
  }
  return YearlySeries(std::move(points));
}

double mean_decline_rate(const YearlySeries& series, int from, int to) {
  if (from >= to) throw DomainError("decline rate needs from < to");
  return (series.value_at(to) - series.value_at(from)) / static_cast<double>(to - from);
}

std::vector<EcsAnchor> parse_anchors(std::string_view text) {
  const csv::Table table = csv::parse(text);
  if (table.rows.empty()) throw ParseError("no rows");
  csv::require_header(table, {"year", "session_seconds", "csf", "provenance"});
  std::vector<EcsAnchor> anchors;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    const int line = table.line_numbers[i];
    if (f.size() < 4) throw ParseError("line " + std::to_string(line) + ": missing column");
    anchors.push_back({parse_int(f[0], "year", line), parse_real(f[1], "session_seconds", line),
                       parse_real(f[2], "csf", line), f[3]});
  }
  return anchors;
}

std::map<int, double> parse_asserted(std::string_view text) {
  const csv::Table table = csv::parse(text);
  if (table.rows.empty()) throw ParseError("no rows");
  csv::require_header(table, {"year", "tokens"});
  std::map<int, double> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    const int line = table.line_numbers[i];
    if (f.size() < 2) throw ParseError("line " + std::to_string(line) + ": missing column");
    const int year = parse_int(f[0], "year", line);
    if (!out.emplace(year, parse_real(f[1], "tokens", line)).second) {
      throw ParseError("line " + std::to_string(line) + ": duplicate year");
    }
  }
  return out;
}

}  // namespace spanlab::ecs
