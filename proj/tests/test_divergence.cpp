#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "spanlab/divergence.hpp"
#include "spanlab/errors.hpp"

using namespace spanlab;
using namespace spanlab::divergence;

namespace {

YearlySeries series(int first, const std::vector<double>& values) {
  std::vector<YearValue> pts;
  for (std::size_t i = 0; i < values.size(); ++i) {
    pts.push_back({first + static_cast<int>(i), values[i], std::nullopt});
  }
  return YearlySeries(pts);
}

YearlySeries published_ai() {
  std::vector<YearValue> pts;
  const double v[] = {512, 512, 1024, 2048, 4096, 4096, 100000, 1e6, 1e6, 2e6};
  for (int i = 0; i < 10; ++i) pts.push_back({2017 + i, v[i], std::nullopt});
  pts[5].upper = 8192;
  return YearlySeries(pts);
}

YearlySeries published_ecs() {
  return series(2017, {13500, 12000, 10500, 9000, 7500, 6000, 4500, 3500, 2500, 1800});
}

}  // namespace

TEST(Divergence, PublishedRows) {
  auto rows = ratio_series(published_ai(), published_ecs(), QualityBand{});
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_NEAR(rows[9].raw_ratio, 2e6 / 1800, 1e-9);
  EXPECT_NEAR(rows[9].qa_ratio, 150000.0 / 1800, 1e-9);
  EXPECT_NEAR(rows[6].raw_ratio, 100000.0 / 4500, 1e-12);
  EXPECT_NEAR(rows[7].raw_ratio, 1e6 / 3500, 1e-9);
  EXPECT_NEAR(rows[0].raw_ratio, 512.0 / 13500, 1e-15);
  ASSERT_TRUE(rows[5].raw_ratio_alt.has_value());
  EXPECT_LT(rows[5].raw_ratio, 1.0);
  EXPECT_GT(*rows[5].raw_ratio_alt, 1.0);
  EXPECT_FALSE(rows[4].raw_ratio_alt.has_value());
}

TEST(Divergence, QualityAdjustNeverExceedsRaw) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logv(2, 8);
  for (int i = 0; i < 200; ++i) {
    const double ai = std::pow(10, logv(rng));
    const double ecs = std::pow(10, logv(rng) / 2);
    auto rows = ratio_series(series(2020, {ai}), series(2020, {ecs}), QualityBand{});
    EXPECT_LE(rows[0].qa_ratio, rows[0].raw_ratio);
    EXPECT_DOUBLE_EQ(rows[0].qa_ratio * ecs, std::min(ai, 150000.0));
  }
  EXPECT_DOUBLE_EQ(quality_adjust(2e6, QualityBand{}, BandPoint::low), 1e5);
  EXPECT_DOUBLE_EQ(quality_adjust(2e6, QualityBand{}, BandPoint::high), 2e5);
  EXPECT_DOUBLE_EQ(quality_adjust(5e4, QualityBand{}, BandPoint::high), 5e4);
}

TEST(Divergence, BandEndpointsAt2026) {
  const QualityBand band;
  EXPECT_NEAR(quality_adjust(2e6, band, BandPoint::low) / 1800, 55.56, 0.01);
  EXPECT_NEAR(quality_adjust(2e6, band, BandPoint::high) / 1800, 111.11, 0.01);
}

TEST(Divergence, ScaleInvariance) {
  auto base = ratio_series(published_ai(), published_ecs(), QualityBand{1e9, 1e9, 1e9});
  std::vector<YearValue> ai, ecs;
  for (const auto& p : published_ai()) ai.push_back({p.year, p.value * 3, p.upper ? std::optional(*p.upper * 3) : std::nullopt});
  for (const auto& p : published_ecs()) ecs.push_back({p.year, p.value * 3, std::nullopt});
  auto scaled = ratio_series(YearlySeries(ai), YearlySeries(ecs), QualityBand{1e9, 1e9, 1e9});
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_NEAR(scaled[i].raw_ratio, base[i].raw_ratio, 1e-12 * base[i].raw_ratio);
  }
}

TEST(Divergence, CrossoverOnPublishedDataIsIntervalIn2022) {
  auto c = crossover_year(ratio_series(published_ai(), published_ecs(), QualityBand{}));
  EXPECT_EQ(c.kind, CrossoverKind::interval);
  EXPECT_EQ(c.year, 2022);
  EXPECT_EQ(describe(c), "2022 (interval)");
}

TEST(Divergence, CrossoverCases) {
  const QualityBand band;
  auto exact = crossover_year(ratio_series(series(2019, {500, 2000}), series(2019, {1000, 1000}), band));
  EXPECT_EQ(exact.kind, CrossoverKind::exact);
  EXPECT_EQ(exact.year, 2020);

  auto parity = crossover_year(ratio_series(series(2019, {500, 1000}), series(2019, {1000, 1000}), band));
  EXPECT_EQ(parity.kind, CrossoverKind::exact);
  EXPECT_EQ(parity.year, 2020);

  auto below = crossover_year(ratio_series(series(2019, {1, 2, 3}), series(2019, {10, 9, 8}), band));
  EXPECT_FALSE(below.found());
  EXPECT_EQ(below.direction, Direction::always_below);

  auto above = crossover_year(ratio_series(series(2019, {20, 30}), series(2019, {10, 9}), band));
  EXPECT_FALSE(above.found());
  EXPECT_EQ(above.direction, Direction::always_above);
}

TEST(Divergence, CrossoverInvariantUnderMonotoneTransform) {
  auto rows = ratio_series(published_ai(), published_ecs(), QualityBand{});
  const auto base = crossover_year(rows);
  for (auto f : {+[](double v) { return std::log(v); }, +[](double v) { return std::sqrt(v); },
                 +[](double v) { return v * v * v + 7; }}) {
    auto t = rows;
    for (auto& r : t) {
      r.ai_tokens = f(r.ai_tokens);
      r.ecs_tokens = f(r.ecs_tokens);
      if (r.ai_tokens_alt) r.ai_tokens_alt = f(*r.ai_tokens_alt);
    }
    const auto c = crossover_year(t);
    EXPECT_EQ(c.kind, base.kind);
    EXPECT_EQ(c.year, base.year);
  }
}

TEST(Divergence, Errors) {
  const QualityBand band;
  EXPECT_THROW(ratio_series(series(2019, {1, 2}), series(2019, {1}), band), DomainError);
  EXPECT_THROW(ratio_series(series(2019, {1, 2}), series(2020, {1, 2}), band), DomainError);
  EXPECT_THROW(ratio_series(series(2019, {1, 2}), series(2019, {1, 0}), band), DomainError);
  EXPECT_THROW(ratio_series(series(2019, {-1, 2}), series(2019, {1, 1}), band), DomainError);
  EXPECT_THROW(check_band({2e5, 1.5e5, 1e5}), DomainError);
  EXPECT_THROW(check_band({0, 1, 2}), DomainError);
}

TEST(Divergence, CsvHasRangeColumns) {
  auto csv = rows_to_csv(ratio_series(published_ai(), published_ecs(), QualityBand{}));
  EXPECT_EQ(csv.rfind("year,ai_tokens,ecs_tokens,raw_ratio,qa_ratio,ai_tokens_alt", 0), 0u);
  EXPECT_NE(csv.find("\n2022,4096,6000,"), std::string::npos);
  EXPECT_NE(csv.find(",8192,"), std::string::npos);
}
