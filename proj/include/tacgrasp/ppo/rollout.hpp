#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "tacgrasp/nn/mlp.hpp"
#include "tacgrasp/nn/normalizer.hpp"
#include "tacgrasp/ppo/env.hpp"

namespace tacgrasp::ppo {

// Transitions stored env-major: entry e * steps_per_env + t.
struct RolloutBuffer {
  int n_envs = 0;
  int steps_per_env = 0;
  Eigen::MatrixXd obs;      // normalized, obs_dim x n
  Eigen::MatrixXd raw_obs;  // as returned by the environments
  Eigen::MatrixXd actions;  // action_dim x n
  Eigen::VectorXd log_probs;
  Eigen::VectorXd rewards;  // scaled, with time-limit bootstraps folded in
  Eigen::VectorXd values;
  Eigen::VectorXd dones;
  Eigen::VectorXd last_values;  // per env, value after the final step
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
  std::vector<double> episode_returns;  // unscaled, episodes finished here
  int failures = 0;

  int size() const { return n_envs * steps_per_env; }
};

// One environment with its sampling stream and episode bookkeeping.
struct EnvWorker {
  std::unique_ptr<RlEnv> env;
  std::mt19937_64 rng;
  std::uint64_t seed_base = 0;
  std::uint64_t episodes = 0;
  Eigen::VectorXd obs;
  double episode_return = 0.0;

  EnvWorker(std::unique_ptr<RlEnv> e, std::uint64_t seed);
  void start_episode();
};

struct PolicyView {
  const nn::ActorCritic& net;
  const nn::RunningMeanStd& obs_norm;
};

// Steps every worker for `steps_per_env` transitions, one thread per worker.
// Results depend only on the workers' states and the policy.
RolloutBuffer collect_rollouts(std::vector<EnvWorker>& workers, const PolicyView& policy,
                               int steps_per_env, double discount, double reward_scale,
                               bool parallel = true);

// Fills advantages and returns per env segment.
void compute_advantages(RolloutBuffer& buffer, double discount, double lambda);

}  // namespace tacgrasp::ppo
