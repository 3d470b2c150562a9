#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spanlab::loopsim {

/// The four nodes of the delegation feedback loop.
///
/// Units are a modelling fiction: capability is proxied by the context window
/// in tokens, and threshold, practice and capacity are all treated as
/// commensurable with ECS tokens.
struct LoopState {
  double ai_capability = 0.0;
  double delegation_threshold = 0.0;
  double practice = 0.0;
  double capacity = 0.0;

  friend bool operator==(const LoopState&, const LoopState&) = default;
};

/// Coupling coefficients. The functional forms they enter are invented (the
/// loop is only given as four qualitative arrows); see step().
struct LoopParams {
  double capability_growth_rate = 0.0;  // per period
  double k_threshold = 0.0;             // [0, 1] relaxation of threshold toward its target
  double k_practice = 0.0;              // [0, 1] relaxation of practice toward the threshold
  double k_capacity = 0.0;              // [0, 1] capacity loss per unit practice deficit
  double practice_floor = 0.0;          // guaranteed minimum practice (intervention lever)
  double capacity_floor = 1.0;
  double recovery_rate = 0.0;           // regrowth per unit relative practice surplus
  double maintenance_practice = 1.0;    // practice that exactly sustains capacity
  double capacity_ceiling = 1.0;        // regrowth target
};

/// Throws DomainError on negative or non-finite couplings, relaxation
/// fractions above 1, or non-positive floors/maintenance.
void check_params(const LoopParams& params);
void check_state(const LoopState& state);

/// Illustrative defaults with no empirical anchor: capacity roughly halves
/// over 20 periods toward a floor of 450 tokens.
LoopParams default_params(double capability_growth_rate);

/// 2022 starting point: capability at the frontier window, threshold and
/// capacity at ECS(2022), practice at three quarters of maintenance.
LoopState default_initial_state(double ai_capability = 8192.0, double ecs_2022 = 4692.7055);

/// One synchronous update (all nodes read the prior state):
///
///   effective practice p = max(practice, practice_floor)
///   capability'  = capability * exp(growth)
///   threshold'   = (1 - k_t) threshold + k_t * capacity^2 / (capability + capacity)
///   practice'    = max(practice_floor, (1 - k_p) p + k_p threshold)
///   deficit      = max(0, 1 - p / maintenance),  surplus = max(0, p / maintenance - 1)
///   capacity'    = max(floor, capacity - k_c deficit (capacity - floor)
///                                      + min(1, recovery surplus) max(0, ceiling - capacity))
///
/// The map is nondecreasing in (threshold, practice, capacity) and capacity'
/// is nonincreasing in k_capacity, so trajectories are ordered by k_capacity.
LoopState step(const LoopState& state, const LoopParams& params);

/// Raises practice_floor to `practice_floor` for every step taken from
/// `start_period` onward.
struct Intervention {
  int start_period = 0;
  double practice_floor = 0.0;
};

/// periods + 1 states beginning with `initial`.
std::vector<LoopState> simulate(const LoopState& initial, const LoopParams& params, int periods,
                                std::optional<Intervention> intervention = std::nullopt);

enum class Trajectory { declining, stabilized, recovering };
std::string_view trajectory_name(Trajectory kind);

/// Mean capacity slope over the last quarter of the trajectory against
/// +/- tolerance. Throws DomainError for fewer than 3 states.
Trajectory classify(const std::vector<LoopState>& trajectory, double tolerance);

struct FixedPoint {
  LoopState state;
  int period = 0;
};

/// First state whose successor differs by less than `epsilon` (relative) in
/// every component, searching periods 0..max_periods.
std::optional<FixedPoint> find_fixed_point(const LoopParams& params, const LoopState& initial,
                                           int max_periods, double epsilon);

/// `period,ai_capability,delegation_threshold,practice,capacity`
std::string trajectory_to_csv(const std::vector<LoopState>& trajectory);

}  // namespace spanlab::loopsim
