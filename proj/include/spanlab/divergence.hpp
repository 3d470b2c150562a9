#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spanlab/series.hpp"

namespace spanlab::divergence {

/// Span over which long-context retrieval stays within 20% of peak F1.
struct QualityBand {
  double low_tokens = 100'000.0;
  double midpoint_tokens = 150'000.0;
  double high_tokens = 200'000.0;
};

/// Throws DomainError unless 0 < low <= midpoint <= high.
void check_band(const QualityBand& band);

enum class BandPoint { low, mid, high };

struct DivergenceRow {
  int year = 0;
  double ai_tokens = 0.0;
  std::optional<double> ai_tokens_alt;  // upper frontier value in range years
  double ecs_tokens = 0.0;
  double raw_ratio = 0.0;
  double qa_ratio = 0.0;
  std::optional<double> raw_ratio_alt;
  std::optional<double> qa_ratio_alt;
};

/// One row per year. Both series must cover the same years and every value
/// must be positive.
std::vector<DivergenceRow> ratio_series(const YearlySeries& ai, const YearlySeries& ecs,
                                        const QualityBand& band);

/// min(ai_tokens, band value at `point`).
double quality_adjust(double ai_tokens, const QualityBand& band, BandPoint point);

enum class CrossoverKind { exact, interval, none };
enum class Direction { always_above, always_below };

struct Crossover {
  CrossoverKind kind = CrossoverKind::none;
  int year = 0;                       // valid unless kind == none
  Direction direction = Direction::always_below;  // valid when kind == none

  [[nodiscard]] bool found() const { return kind != CrossoverKind::none; }
};

/// First year where AI context meets or exceeds human ECS (upper value in
/// range years). Flagged `interval` when that year's lower value is still
/// below parity. Compares tokens directly rather than ratios, so the result
/// is invariant under any strictly increasing transform of both series.
Crossover crossover_year(const std::vector<DivergenceRow>& rows);

std::string describe(const Crossover& crossover);

/// `year,ai_tokens,ecs_tokens,raw_ratio,qa_ratio,ai_tokens_alt,raw_ratio_alt,qa_ratio_alt`
std::string rows_to_csv(const std::vector<DivergenceRow>& rows);

}  // namespace spanlab::divergence
