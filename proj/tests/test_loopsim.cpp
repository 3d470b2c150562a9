#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "spanlab/errors.hpp"
#include "spanlab/loopsim.hpp"

using namespace spanlab;
using namespace spanlab::loopsim;

namespace {

constexpr double kLambda = 1.0561;

LoopParams decoupled() {
  LoopParams p;
  p.capacity_floor = 1.0;
  p.maintenance_practice = 1.0;
  p.capacity_ceiling = 1.0;
  return p;
}

LoopParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0, 1), growth(-0.5, 2), lf(0, 4);
  LoopParams p;
  p.capability_growth_rate = growth(rng);
  p.k_threshold = unit(rng);
  p.k_practice = unit(rng);
  p.k_capacity = unit(rng);
  p.practice_floor = std::pow(10, lf(rng)) * unit(rng);
  p.capacity_floor = std::pow(10, lf(rng));
  p.recovery_rate = 2 * unit(rng);
  p.maintenance_practice = std::pow(10, lf(rng)) + 1;
  p.capacity_ceiling = p.capacity_floor * (1 + 10 * unit(rng));
  return p;
}

LoopState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lv(0, 6);
  return {std::pow(10, lv(rng)), std::pow(10, lv(rng)), std::pow(10, lv(rng)),
          std::pow(10, lv(rng))};
}

}  // namespace

TEST(LoopSim, DecoupledStepIsIdentity) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    LoopState s = random_state(rng);
    s.capacity = std::max(s.capacity, 1.0);
    s.practice = std::min(s.practice, 1.0);  // no surplus to regrow from
    EXPECT_EQ(step(s, decoupled()), s);
  }
  const auto traj = simulate(default_initial_state(), decoupled(), 10);
  for (const auto& s : traj) EXPECT_EQ(s, traj.front());
  EXPECT_EQ(classify(traj, 1.0), Trajectory::stabilized);
}

TEST(LoopSim, DefaultFirstStepDeclines) {
  const auto s0 = default_initial_state();
  const auto s1 = step(s0, default_params(kLambda));
  EXPECT_LT(s1.capacity, s0.capacity);
  EXPECT_LT(s1.delegation_threshold, s0.delegation_threshold);
  EXPECT_NEAR(s1.ai_capability, s0.ai_capability * std::exp(kLambda), 1e-9);
}

TEST(LoopSim, FloorAboveMaintenanceDoesNotLoseCapacity) {
  auto p = default_params(kLambda);
  p.practice_floor = 1.2 * p.maintenance_practice;
  const auto s0 = default_initial_state();
  const auto s1 = step(s0, p);
  EXPECT_GE(s1.capacity, s0.capacity);
}

TEST(LoopSim, DefaultTrajectoryDeclinesMonotonically) {
  const auto p = default_params(kLambda);
  const auto traj = simulate(default_initial_state(), p, 40);
  ASSERT_EQ(traj.size(), 41u);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    EXPECT_LE(traj[i].capacity, traj[i - 1].capacity);
    EXPECT_LE(traj[i].delegation_threshold, traj[i - 1].delegation_threshold);
    EXPECT_GE(traj[i].capacity, p.capacity_floor);
  }
  EXPECT_GT(traj.back().capacity, p.capacity_floor);
  EXPECT_EQ(classify(traj, 1.0), Trajectory::declining);
}

TEST(LoopSim, InterventionReversesDecline) {
  const auto p = default_params(kLambda);
  const auto traj = simulate(default_initial_state(), p, 40,
                             Intervention{20, 1.5 * p.maintenance_practice});
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj[i].capacity < traj[argmin].capacity) argmin = i;
  }
  EXPECT_GE(argmin, 20u);
  for (std::size_t i = argmin + 1; i < traj.size(); ++i) {
    EXPECT_GE(traj[i].capacity, traj[i - 1].capacity);
  }
  EXPECT_EQ(classify(traj, 1.0), Trajectory::recovering);
}

TEST(LoopSim, InterventionReversalExistsForDecliningDefaults) {
  for (double g : {0.1, 0.59, kLambda, 2.0}) {
    const auto p = default_params(g);
    const auto base = simulate(default_initial_state(), p, 40);
    if (classify(base, 1.0) != Trajectory::declining) continue;
    bool found = false;
    for (double factor : {1.05, 1.2, 1.5, 2.0, 4.0}) {
      const auto traj =
          simulate(default_initial_state(), p, 40, Intervention{0, factor * p.maintenance_practice});
      found = found || classify(traj, 1.0) == Trajectory::recovering;
    }
    EXPECT_TRUE(found) << "growth " << g;
  }
}

TEST(LoopSim, FloorSafetyOnRandomParameters) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_params(rng);
    const auto traj = simulate(random_state(rng), p, 60);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const auto& s = traj[i];
      ASSERT_GE(s.capacity, p.capacity_floor);
      ASSERT_GE(s.practice, p.practice_floor);
      ASSERT_GE(s.delegation_threshold, 0.0);
      ASSERT_GT(s.ai_capability, 0.0);
      ASSERT_TRUE(std::isfinite(s.capacity) && std::isfinite(s.practice) &&
                  std::isfinite(s.delegation_threshold));
    }
  }
}

TEST(LoopSim, CapacityMonotoneInKCapacity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto lo = random_params(rng);
    auto hi = lo;
    std::uniform_real_distribution<double> unit(0, 1);
    lo.k_capacity = 0.5 * unit(rng);
    hi.k_capacity = lo.k_capacity + (1 - lo.k_capacity) * unit(rng);
    const auto init = random_state(rng);
    const auto a = simulate(init, lo, 40);
    const auto b = simulate(init, hi, 40);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_LE(b[i].capacity, a[i].capacity * (1 + 1e-12)) << "trial " << trial << " t " << i;
    }
  }
}

TEST(LoopSim, FixedPoints) {
  const auto zero = find_fixed_point(decoupled(), {100, 10, 0.5, 5}, 10, 1e-12);
  ASSERT_TRUE(zero.has_value());
  EXPECT_EQ(zero->period, 0);

  const auto p = default_params(0.0);
  const auto fp = find_fixed_point(p, default_initial_state(), 20000, 1e-12);
  ASSERT_TRUE(fp.has_value());
  const auto next = step(fp->state, p);
  EXPECT_NEAR(next.capacity, fp->state.capacity, 1e-9 * fp->state.capacity);
  EXPECT_NEAR(next.practice, fp->state.practice, 1e-9 * fp->state.practice + 1e-12);
  EXPECT_NEAR(fp->state.capacity, p.capacity_floor, 1e-6);

  EXPECT_FALSE(find_fixed_point(default_params(kLambda), default_initial_state(), 500, 1e-9));
}

TEST(LoopSim, Deterministic) {
  const auto p = default_params(kLambda);
  EXPECT_EQ(simulate(default_initial_state(), p, 40), simulate(default_initial_state(), p, 40));
  EXPECT_EQ(trajectory_to_csv(simulate(default_initial_state(), p, 5)),
            trajectory_to_csv(simulate(default_initial_state(), p, 5)));
}

TEST(LoopSim, Errors) {
  auto p = default_params(kLambda);
  p.k_capacity = 1.5;
  EXPECT_THROW(simulate(default_initial_state(), p, 10), DomainError);
  p = default_params(kLambda);
  p.capacity_floor = 0;
  EXPECT_THROW(check_params(p), DomainError);
  EXPECT_THROW(simulate(default_initial_state(), default_params(kLambda), 0), DomainError);
  EXPECT_THROW(check_state({1, 1, -1, 1}), DomainError);
  const auto traj = simulate(default_initial_state(), default_params(kLambda), 1);
  EXPECT_THROW(classify(traj, 1.0), DomainError);
}
