#pragma once

// Planar reaching benchmark with a known optimal policy. A kinematic point is
// driven at velocity v_max * clip(a, -1, 1) per axis towards a goal; the
// per-step reward is max(0, 1 - distance / reward_radius).

#include <Eigen/Core>

#include "tacgrasp/physics/world.hpp"
#include "tacgrasp/ppo/env.hpp"

namespace tacgrasp::ppo {

struct PointReachConfig {
  double half_extent = 0.5;  // start and goal are uniform in the square
  double v_max = 0.5;
  int horizon = 40;
  int substeps = 10;
  double dt = 0.005;
  double reward_radius = 1.0;
};

class PointReachEnv final : public RlEnv {
 public:
  explicit PointReachEnv(PointReachConfig cfg = {});

  // observation: [x, y, goal_x - x, goal_y - y]
  int obs_dim() const override { return 4; }
  int action_dim() const override { return 2; }
  Eigen::VectorXd reset(std::uint64_t seed) override;
  EnvStep step(const Eigen::VectorXd& action) override;

  Eigen::Vector2d position() const;
  const Eigen::Vector2d& goal() const { return goal_; }
  const PointReachConfig& config() const { return cfg_; }

 private:
  Eigen::VectorXd observe() const;

  PointReachConfig cfg_;
  physics::WorldState world_;
  Eigen::Vector2d goal_ = Eigen::Vector2d::Zero();
  int t_ = 0;
};

// Per-axis greedy action that closes the remaining offset as fast as the
// velocity limit allows; optimal for the distance-based reward.
Eigen::VectorXd point_reach_oracle(const Eigen::VectorXd& obs, const PointReachConfig& cfg);

// Mean return of the oracle over the evaluation seeds used by evaluate_policy.
double point_reach_optimal_return(const PointReachConfig& cfg, int episodes, std::uint64_t seed);

}  // namespace tacgrasp::ppo
