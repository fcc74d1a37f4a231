#pragma once

#include <random>

#include "tacgrasp/nn/adam.hpp"
#include "tacgrasp/nn/mlp.hpp"
#include "tacgrasp/ppo/config.hpp"
#include "tacgrasp/ppo/rollout.hpp"

namespace tacgrasp::ppo {

// min(ratio * adv, clip(ratio, 1 - eps, 1 + eps) * adv)
double clipped_surrogate(double ratio, double advantage, double eps);

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
  double grad_norm = 0.0;  // before clipping, last minibatch
};

// Loss and parameter gradient of one minibatch (indices into the buffer).
// Advantages are used as stored.
struct MinibatchLoss {
  double total = 0.0;
  UpdateStats stats;
  nn::GradientBuffer grad;
};
MinibatchLoss minibatch_loss(const nn::ActorCritic& net, const RolloutBuffer& buffer,
                             const std::vector<int>& indices, const PpoConfig& cfg);

// Normalizes the buffer advantages, then runs cfg.epochs passes of shuffled
// minibatches. Throws TrainingDiverged on a non-finite loss or gradient.
UpdateStats ppo_update(nn::ActorCritic& net, nn::AdamState& adam, RolloutBuffer& buffer,
                       const PpoConfig& cfg, std::mt19937_64& rng);

}  // namespace tacgrasp::ppo
