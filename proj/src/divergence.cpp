#include "spanlab/divergence.hpp"

#include <algorithm>

#include "spanlab/csv.hpp"
#include "spanlab/errors.hpp"

namespace spanlab::divergence {

void check_band(const QualityBand& band) {
  if (!(band.low_tokens > 0.0 && band.low_tokens <= band.midpoint_tokens &&
        band.midpoint_tokens <= band.high_tokens)) {
    throw DomainError("quality band must satisfy 0 < low <= midpoint <= high");
  }
}

double quality_adjust(double ai_tokens, const QualityBand& band, BandPoint point) {
  switch (point) {
    case BandPoint::low: return std::min(ai_tokens, band.low_tokens);
    case BandPoint::mid: return std::min(ai_tokens, band.midpoint_tokens);
    case BandPoint::high: return std::min(ai_tokens, band.high_tokens);
  }
  return ai_tokens;
}

std::vector<DivergenceRow> ratio_series(const YearlySeries& ai, const YearlySeries& ecs,
                                        const QualityBand& band) {
  check_band(band);
  if (ai.size() != ecs.size()) throw DomainError("AI and ECS series cover different years");
  std::vector<DivergenceRow> rows;
  rows.reserve(ai.size());
  auto e = ecs.begin();
  for (auto a = ai.begin(); a != ai.end(); ++a, ++e) {
    if (a->year != e->year) {
      throw DomainError("year mismatch: AI " + std::to_string(a->year) + " vs ECS " +
                        std::to_string(e->year));
    }
    if (!(e->value > 0.0)) {
      throw DomainError("non-positive ECS in " + std::to_string(e->year));
    }
    if (!(a->value > 0.0) || (a->upper && !(*a->upper > 0.0))) {
      throw DomainError("non-positive AI context in " + std::to_string(a->year));
    }
    DivergenceRow row;
    row.year = a->year;
    row.ai_tokens = a->value;
    row.ecs_tokens = e->value;
    row.raw_ratio = a->value / e->value;
    row.qa_ratio = quality_adjust(a->value, band, BandPoint::mid) / e->value;
    if (a->upper) {
      row.ai_tokens_alt = *a->upper;
      row.raw_ratio_alt = *a->upper / e->value;
      row.qa_ratio_alt = quality_adjust(*a->upper, band, BandPoint::mid) / e->value;
    }
    rows.push_back(row);
  }
  return rows;
}

Crossover crossover_year(const std::vector<DivergenceRow>& rows) {
  Crossover out;
  if (rows.empty()) return out;
  auto upper = [](const DivergenceRow& r) { return r.ai_tokens_alt.value_or(r.ai_tokens); };

  const DivergenceRow& first = rows.front();
  if (first.ai_tokens >= first.ecs_tokens) {
    out.direction = Direction::always_above;
    return out;
  }
  for (const auto& r : rows) {
    // Parity counts as crossed.
    if (upper(r) >= r.ecs_tokens) {
      out.year = r.year;
      out.kind = r.ai_tokens < r.ecs_tokens ? CrossoverKind::interval : CrossoverKind::exact;
      return out;
    }
  }
  out.direction = Direction::always_below;
  return out;
}

std::string describe(const Crossover& c) {
  switch (c.kind) {
    case CrossoverKind::exact: return std::to_string(c.year) + " (exact)";
    case CrossoverKind::interval: return std::to_string(c.year) + " (interval)";
    case CrossoverKind::none:
      return c.direction == Direction::always_above ? "none (always above parity)"
                                                    : "none (always below parity)";
  }
  return "none";
}

std::string rows_to_csv(const std::vector<DivergenceRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? csv::format_double(*v) : ""; };
  std::string out =
      "year,ai_tokens,ecs_tokens,raw_ratio,qa_ratio,ai_tokens_alt,raw_ratio_alt,qa_ratio_alt\n";
  for (const auto& r : rows) {
    out += std::to_string(r.year) + ',' + csv::format_double(r.ai_tokens) + ',' +
           csv::format_double(r.ecs_tokens) + ',' + csv::format_double(r.raw_ratio) + ',' +
           csv::format_double(r.qa_ratio) + ',' + opt(r.ai_tokens_alt) + ',' +
           opt(r.raw_ratio_alt) + ',' + opt(r.qa_ratio_alt) + '\n';
  }
  return out;
}

}  // namespace spanlab::divergence
