#pragma once

// Versioned JSON checkpoint:
//   {"format": "tacgrasp-policy", "version": 1,
//    "shape": {"obs_dim", "hidden", "action_dim", "activation"},
//    "params": [...], "obs_norm": {"mean", "var", "count", "clip"},
//    "step": N, "metadata": {...}}

#include <string>

#include "json.hpp"
#include "tacgrasp/nn/mlp.hpp"
#include "tacgrasp/nn/normalizer.hpp"

namespace tacgrasp::nn {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  ActorCritic net;
  RunningMeanStd obs_norm;
  long long step = 0;
  nlohmann::json metadata = nlohmann::json::object();
};

nlohmann::json checkpoint_to_json(const Checkpoint& ckpt);
// Throws ConfigError on malformed documents, unknown versions, or parameter
// and normalizer sizes that disagree with the recorded shape.
Checkpoint checkpoint_from_json(const nlohmann::json& doc);

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace tacgrasp::nn
