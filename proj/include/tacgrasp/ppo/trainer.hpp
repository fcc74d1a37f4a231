#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "tacgrasp/nn/adam.hpp"
#include "tacgrasp/nn/checkpoint.hpp"
#include "tacgrasp/ppo/config.hpp"
#include "tacgrasp/ppo/convergence.hpp"
#include "tacgrasp/ppo/env.hpp"
#include "tacgrasp/ppo/ppo_update.hpp"
#include "tacgrasp/ppo/rollout.hpp"

namespace tacgrasp::ppo {

struct MetricsRow {
  long long step = 0;
  int update = 0;
  double eval_reward = 0.0;   // mean over evaluation episodes, mean actions
  double train_return = 0.0;  // mean of episodes finished since the last row; NaN if none
  int episodes = 0;
  int failures = 0;
  UpdateStats stats;
  TrainingPhase phase = TrainingPhase::kExplorationOscillation;
  bool converged = false;
};

struct TrainResult {
  std::vector<MetricsRow> metrics;
  nn::Checkpoint checkpoint;
  long long steps = 0;
  long long converged_step = -1;  // first evaluation flagged converged
};

struct TrainerHooks {
  // Called after every evaluation with the row and the current policy.
  std::function<void(const MetricsRow&, const nn::Checkpoint&)> on_eval;
};

// Mean undiscounted return of `episodes` episodes that follow the policy mean.
// Episode k is reset with splitmix64(seed + k).
double evaluate_policy(RlEnv& env, const nn::ActorCritic& net, const nn::RunningMeanStd& obs_norm,
                       int episodes, std::uint64_t seed);

class PpoTrainer {
 public:
  // Throws ConfigError for an invalid configuration.
  PpoTrainer(PpoConfig cfg, EnvFactory factory, std::uint64_t seed);

  nn::Checkpoint checkpoint() const;
  TrainResult train(const TrainerHooks& hooks = {});

  const PpoConfig& config() const { return cfg_; }
  const nn::ActorCritic& net() const { return net_; }
  const nn::RunningMeanStd& obs_norm() const { return obs_norm_; }
  long long steps() const { return steps_; }

 private:
  PpoConfig cfg_;
  std::uint64_t seed_;
  std::vector<EnvWorker> workers_;
  std::unique_ptr<RlEnv> eval_env_;
  nn::ActorCritic net_;
  nn::RunningMeanStd obs_norm_;
  nn::AdamState adam_;
  std::mt19937_64 update_rng_;
  long long steps_ = 0;
};

}  // namespace tacgrasp::ppo
