#include "spanlab/loopsim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spanlab/csv.hpp"
#include "spanlab/errors.hpp"

namespace spanlab::loopsim {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

bool close_relative(double a, double b, double epsilon) {
  const double diff = std::abs(a - b);
  if (diff == 0.0) return true;
  return diff < epsilon * std::max(std::abs(a), std::abs(b));
}

}  // namespace

void check_params(const LoopParams& p) {
  auto unit = [](double k) { return std::isfinite(k) && k >= 0.0 && k <= 1.0; };
  require(std::isfinite(p.capability_growth_rate), "capability_growth_rate must be finite");
  require(unit(p.k_threshold), "k_threshold must be in [0, 1]");
  require(unit(p.k_practice), "k_practice must be in [0, 1]");
  require(unit(p.k_capacity), "k_capacity must be in [0, 1]");
  require(std::isfinite(p.practice_floor) && p.practice_floor >= 0.0,
          "practice_floor must be nonnegative");
  require(std::isfinite(p.capacity_floor) && p.capacity_floor > 0.0,
          "capacity_floor must be positive");
  require(std::isfinite(p.recovery_rate) && p.recovery_rate >= 0.0,
          "recovery_rate must be nonnegative");
  require(std::isfinite(p.maintenance_practice) && p.maintenance_practice > 0.0,
          "maintenance_practice must be positive");
  require(std::isfinite(p.capacity_ceiling) && p.capacity_ceiling >= p.capacity_floor,
          "capacity_ceiling must be at least capacity_floor");
}

void check_state(const LoopState& s) {
  require(std::isfinite(s.ai_capability) && s.ai_capability > 0.0,
          "ai_capability must be positive");
  require(std::isfinite(s.delegation_threshold) && s.delegation_threshold >= 0.0,
          "delegation_threshold must be nonnegative");
  require(std::isfinite(s.practice) && s.practice >= 0.0, "practice must be nonnegative");
  require(std::isfinite(s.capacity) && s.capacity > 0.0, "capacity must be positive");
}

LoopParams default_params(double capability_growth_rate) {
  LoopParams p;
  p.capability_growth_rate = capability_growth_rate;
  p.k_threshold = 0.25;
  p.k_practice = 0.25;
  p.k_capacity = 0.05;
  p.practice_floor = 0.0;
  p.capacity_floor = 450.0;
  p.recovery_rate = 0.1;
  p.maintenance_practice = 4692.7055;  // ECS(2022)
  p.capacity_ceiling = 15985.27;       // ECS(2004)
  return p;
}

LoopState default_initial_state(double ai_capability, double ecs_2022) {
  return {ai_capability, ecs_2022, 0.75 * ecs_2022, ecs_2022};
}

LoopState step(const LoopState& s, const LoopParams& p) {
  const double practice = std::max(s.practice, p.practice_floor);

  LoopState next;
  next.ai_capability = s.ai_capability * std::exp(p.capability_growth_rate);

  const double threshold_target = s.capacity * s.capacity / (s.ai_capability + s.capacity);
  next.delegation_threshold =
      (1.0 - p.k_threshold) * s.delegation_threshold + p.k_threshold * threshold_target;

  next.practice = std::max(p.practice_floor,
                           (1.0 - p.k_practice) * practice + p.k_practice * s.delegation_threshold);

  const double relative = practice / p.maintenance_practice;
  const double deficit = std::max(0.0, 1.0 - relative);
  const double surplus = std::max(0.0, relative - 1.0);
  const double loss = p.k_capacity * deficit * (s.capacity - p.capacity_floor);
  const double gain =
      std::min(1.0, p.recovery_rate * surplus) * std::max(0.0, p.capacity_ceiling - s.capacity);
  next.capacity = std::max(p.capacity_floor, s.capacity - loss + gain);
  return next;
}

std::vector<LoopState> simulate(const LoopState& initial, const LoopParams& params, int periods,
                                std::optional<Intervention> intervention) {
  require(periods >= 1, "periods must be at least 1");
  check_params(params);
  check_state(initial);
  LoopParams active = params;
  std::vector<LoopState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(periods) + 1);
  trajectory.push_back(initial);
  for (int t = 0; t < periods; ++t) {
    if (intervention && t == intervention->start_period) {
      active.practice_floor = intervention->practice_floor;
    }
    trajectory.push_back(step(trajectory.back(), active));
  }
  return trajectory;
}

std::string_view trajectory_name(Trajectory kind) {
  switch (kind) {
    case Trajectory::declining: return "declining";
    case Trajectory::stabilized: return "stabilized";
    case Trajectory::recovering: return "recovering";
  }
  return "unknown";
}

Trajectory classify(const std::vector<LoopState>& trajectory, double tolerance) {
  require(trajectory.size() >= 3, "classification needs at least 3 states");
  require(tolerance > 0.0, "tolerance must be positive");
  const std::size_t last = trajectory.size() - 1;
  const std::size_t start = std::min(last - 1, (3 * last) / 4);
  const double slope =
      (trajectory[last].capacity - trajectory[start].capacity) / static_cast<double>(last - start);
  if (slope < -tolerance) return Trajectory::declining;
  if (slope > tolerance) return Trajectory::recovering;
  return Trajectory::stabilized;
}

std::optional<FixedPoint> find_fixed_point(const LoopParams& params, const LoopState& initial,
                                           int max_periods, double epsilon) {
  require(max_periods >= 1, "max_periods must be at least 1");
  require(epsilon > 0.0, "epsilon must be positive");
  check_params(params);
  check_state(initial);
  LoopState state = initial;
  for (int period = 0; period <= max_periods; ++period) {
    const LoopState next = step(state, params);
    if (close_relative(state.ai_capability, next.ai_capability, epsilon) &&
        close_relative(state.delegation_threshold, next.delegation_threshold, epsilon) &&
        close_relative(state.practice, next.practice, epsilon) &&
        close_relative(state.capacity, next.capacity, epsilon)) {
      return FixedPoint{state, period};
    }
    state = next;
  }
  return std::nullopt;
}

std::string trajectory_to_csv(const std::vector<LoopState>& trajectory) {
  std::string out = "period,ai_capability,delegation_threshold,practice,capacity\n";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto& s = trajectory[i];
    out += std::to_string(i) + ',' + csv::format_double(s.ai_capability) + ',' +
           csv::format_double(s.delegation_threshold) + ',' + csv::format_double(s.practice) +
           ',' + csv::format_double(s.capacity) + '\n';
  }
  return out;
}

}  // namespace spanlab::loopsim
