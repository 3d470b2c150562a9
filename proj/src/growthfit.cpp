#include "spanlab/growthfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/distributions/students_t.hpp>

#include "spanlab/errors.hpp"

namespace spanlab::growthfit {
namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double sse = 0.0;
  double sst = 0.0;
  double sxx = 0.0;
};

/// Centered least squares of ln(tokens) on t.
LineFit fit_log_line(std::span<const Observation> obs) {
  const double n = static_cast<double>(obs.size());
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (const auto& o : obs) {
    t_mean += o.t;
    y_mean += std::log(o.tokens);
  }
  t_mean /= n;
  y_mean /= n;

  LineFit f;
  double sxy = 0.0;
  for (const auto& o : obs) {
    const double dt = o.t - t_mean;
    const double dy = std::log(o.tokens) - y_mean;
    f.sxx += dt * dt;
    sxy += dt * dy;
    f.sst += dy * dy;
  }
  if (!(f.sxx > 0.0)) throw DomainError("fit needs at least two distinct time values");
  f.slope = sxy / f.sxx;
  f.intercept = y_mean - f.slope * t_mean;
  for (const auto& o : obs) {
    const double r = std::log(o.tokens) - (f.intercept + f.slope * o.t);
    f.sse += r * r;
  }
  return f;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform integer in [0, bound) by rejection, identical on every platform.
std::size_t draw_index(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

/// Linear interpolation between order statistics (the common "type 7" rule).
double percentile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

constexpr int kMaxRedraws = 64;

}  // namespace

GrowthFit fit_exponential(std::span<const Observation> observations) {
  if (observations.size() < 3) throw DomainError("fit needs at least 3 points");
  for (const auto& o : observations) {
    if (!(o.tokens > 0.0) || !std::isfinite(o.tokens)) {
      throw DomainError("token counts must be positive to take logarithms");
    }
  }
  const LineFit line = fit_log_line(observations);
  const int n = static_cast<int>(observations.size());

  GrowthFit fit;
  fit.lambda = line.slope;
  fit.c0 = std::exp(line.intercept);
  fit.n_points = n;
  fit.r_squared = line.sst > 0.0 ? std::clamp(1.0 - line.sse / line.sst, 0.0, 1.0) : 1.0;

  const double dof = n - 2;
  const double slope_se = std::sqrt(line.sse / dof / line.sxx);
  const boost::math::students_t dist(dof);
  const double q = boost::math::quantile(dist, 0.975);
  fit.ci_low = fit.lambda - q * slope_se;
  fit.ci_high = fit.lambda + q * slope_se;

  fit.doubling_months =
      fit.lambda > 0.0 ? doubling_time_months(fit.lambda) : std::numeric_limits<double>::quiet_NaN();
  fit.cagr_continuous = cagr(fit.lambda);
  return fit;
}

std::vector<Observation> observations_from_series(const YearlySeries& series, int base_year,
                                                  bool use_upper) {
  std::vector<Observation> out;
  out.reserve(series.size());
  for (const auto& p : series) {
    const double v = (use_upper && p.upper) ? *p.upper : p.value;
    out.push_back({static_cast<double>(p.year - base_year), v});
  }
  return out;
}

double doubling_time_months(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("doubling time needs a positive growth rate");
  return 12.0 * std::numbers::ln2 / lambda;
}

double cagr(double lambda) { return std::expm1(lambda); }

Interval bootstrap_ci(std::span<const Observation> observations, int resamples,
                      std::uint64_t seed) {
  if (resamples < 100) throw DomainError("bootstrap needs at least 100 resamples");
  if (observations.size() < 3) throw DomainError("fit needs at least 3 points");
  for (const auto& o : observations) {
    if (!(o.tokens > 0.0)) throw DomainError("token counts must be positive to take logarithms");
  }

  const std::size_t n = observations.size();
  std::vector<double> lambdas(static_cast<std::size_t>(resamples));
  std::vector<Observation> sample(n);
  for (int i = 0; i < resamples; ++i) {
    // Each resample owns its stream, so any evaluation order gives the same set.
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i))));
    bool drawn = false;
    for (int attempt = 0; attempt <= kMaxRedraws && !drawn; ++attempt) {
      for (auto& s : sample) s = observations[draw_index(rng, n)];
      const double t0 = sample.front().t;
      drawn = std::any_of(sample.begin(), sample.end(),
                          [t0](const Observation& o) { return o.t != t0; });
    }
    if (!drawn) {
      throw DomainError("bootstrap resample " + std::to_string(i) +
                        " degenerate after repeated redraws");
    }
    lambdas[static_cast<std::size_t>(i)] = fit_log_line(sample).slope;
  }
  std::sort(lambdas.begin(), lambdas.end());
  return {percentile(lambdas, 0.025), percentile(lambdas, 0.975)};
}

FitPreset parse_preset(std::string_view name) {
  if (name == "table2-frontier") return FitPreset::table2_frontier;
  if (name == "appendixA-all") return FitPreset::appendix_all;
  if (name == "appendixA-monthly") return FitPreset::appendix_monthly;
  throw ParseError("unknown fit preset '" + std::string(name) + "'");
}

std::string_view preset_name(FitPreset preset) {
  switch (preset) {
    case FitPreset::table2_frontier: return "table2-frontier";
    case FitPreset::appendix_all: return "appendixA-all";
    case FitPreset::appendix_monthly: return "appendixA-monthly";
  }
  return "unknown";
}

std::vector<Observation> preset_observations(const timeline::TimelineDataset& dataset,
                                             FitPreset preset,
                                             const std::vector<std::string>& exclusions,
                                             int first_year, int last_year, bool range_upper,
                                             int as_of_month) {
  if (preset == FitPreset::table2_frontier) {
    const auto series =
        timeline::leading_context_by_year(dataset, first_year, last_year, exclusions,
                                          as_of_month);
    return observations_from_series(series, first_year, range_upper);
  }
  std::vector<Observation> out;
  for (const auto& r : dataset.releases()) {
    if (r.release_year < first_year || r.release_year > last_year) continue;
    if (timeline::is_excluded(r, exclusions)) continue;
    double t = static_cast<double>(r.release_year - first_year);
    if (preset == FitPreset::appendix_monthly) t += (r.release_month - 1) / 12.0;
    out.push_back({t, static_cast<double>(r.max_context_tokens)});
  }
  return out;
}

}  // namespace spanlab::growthfit
