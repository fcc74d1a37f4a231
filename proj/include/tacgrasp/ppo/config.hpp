#pragma once

#include <cstdint>
#include <vector>

namespace tacgrasp::ppo {

struct PpoConfig {
  double clip_eps = 0.2;
  double discount = 0.99;
  double gae_lambda = 0.95;
  int rollout_steps = 2048;  // per update, summed over environments
  int n_envs = 4;
  int epochs = 10;
  int minibatch = 64;
  double lr = 3e-4;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double max_grad_norm = 0.5;
  double reward_scale = 1.0;  // applied to rewards before learning only
  long long max_steps = 300000;

  std::vector<int> hidden = {128, 128};
  double init_log_std = 0.0;

  long long eval_interval = 10000;  // environment steps between evaluations
  int eval_episodes = 10;

  long long convergence_window = 30000;  // environment steps
  double convergence_threshold = 0.05;
  double reward_floor = 1.0;
  double oscillation_threshold = 0.5;
  int phase_window = 5;  // evaluations
  bool stop_on_convergence = false;
};

// Throws ConfigError naming the field.
void validate_ppo_config(const PpoConfig& cfg);

}  // namespace tacgrasp::ppo
