#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spanlab/series.hpp"
#include "spanlab/timeline.hpp"

namespace spanlab::growthfit {

/// One point of the growth series; `t` is years since the base year.
struct Observation {
  double t = 0.0;
  double tokens = 0.0;
};

/// Exponential context growth C(t) = c0 * exp(lambda * t), fitted on ln C.
struct GrowthFit {
  double lambda = 0.0;
  double c0 = 0.0;
  double ci_low = 0.0;   // 95% t-interval on lambda
  double ci_high = 0.0;
  double doubling_months = 0.0;  // NaN unless lambda > 0
  double cagr_continuous = 0.0;  // exp(lambda) - 1
  double r_squared = 0.0;
  int n_points = 0;
};

/// Ordinary least squares of ln(tokens) on t. Requires >= 3 points, every
/// token count positive, and at least two distinct t values.
GrowthFit fit_exponential(std::span<const Observation> observations);

/// Observations from a yearly series with t = year - base_year. Range years
/// contribute their upper value when `use_upper` is set.
std::vector<Observation> observations_from_series(const YearlySeries& series, int base_year,
                                                  bool use_upper = true);

/// 12 ln 2 / lambda; throws DomainError for lambda <= 0.
double doubling_time_months(double lambda);

/// exp(lambda) - 1.
double cagr(double lambda);

struct Interval {
  double low = 0.0;
  double high = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Case-resampling percentile bootstrap of lambda. Resample i draws from its
/// own generator seeded from (seed, i), so the result does not depend on
/// evaluation order. Resamples with fewer than two distinct t values are
/// redrawn (bounded), then fail.
Interval bootstrap_ci(std::span<const Observation> observations, int resamples,
                      std::uint64_t seed);

/// Which observations feed the fit.
enum class FitPreset {
  table2_frontier,    // per-year frontier 2017-2026
  appendix_all,       // every release, integer years
  appendix_monthly,   // every release, year + (month - 1) / 12
};

FitPreset parse_preset(std::string_view name);
std::string_view preset_name(FitPreset preset);
inline constexpr FitPreset kAllPresets[] = {FitPreset::table2_frontier,
                                            FitPreset::appendix_all,
                                            FitPreset::appendix_monthly};

/// Builds the observations for a preset over [first_year, last_year], t
/// measured from first_year. `range_upper` picks the upper value (8,192) for
/// range years under table2_frontier; `as_of_month` is the frontier cutoff
/// (see leading_context_by_year).
std::vector<Observation> preset_observations(const timeline::TimelineDataset& dataset,
                                             FitPreset preset,
                                             const std::vector<std::string>& exclusions,
                                             int first_year, int last_year,
                                             bool range_upper = true, int as_of_month = 12);

}  // namespace spanlab::growthfit
