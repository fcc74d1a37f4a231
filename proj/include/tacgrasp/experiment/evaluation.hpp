#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "tacgrasp/experiment/config.hpp"
#include "tacgrasp/grasp/episode.hpp"
#include "tacgrasp/nn/checkpoint.hpp"

namespace tacgrasp::experiment {

struct TrialRecord {
  grasp::ShapeKind shape = grasp::ShapeKind::kSphere;
  Condition condition = Condition::kTactile;
  int index = 0;
  std::uint64_t seed = 0;
  bool success = false;
  bool failed = false;  // simulation diverged
  int steps = 0;
  double final_reward = 0.0;
  double total_reward = 0.0;
  double position_error = 0.0;
  double orientation_error = 0.0;
  int fingertips = 0;  // at the final step

  bool operator==(const TrialRecord&) const = default;
};

// Episode seed of trial `index`. Trial seeds do not depend on the trial count
// or the shape, so adding trials leaves earlier ones unchanged.
std::uint64_t trial_seed(std::uint64_t base_seed, int index);

// Returns a fresh policy per trial; policies may keep internal state.
using PolicyFactory = std::function<grasp::Policy()>;

PolicyFactory checkpoint_policy(const nn::Checkpoint& ckpt, const grasp::TaskConfig& task);

// One evaluation episode. `task` must already carry the condition's tactile
// flag and the evaluation noise.
TrialRecord run_trial(const grasp::TaskConfig& task, grasp::ShapeKind shape, Condition condition,
                      int index, std::uint64_t seed, const grasp::Policy& policy,
                      grasp::EpisodeTrace* trace = nullptr);

// Runs `trials` episodes per shape on `threads` workers. Output order is
// shape order, then trial index, independent of scheduling.
std::vector<TrialRecord> run_trials(const grasp::TaskConfig& task,
                                    const std::vector<grasp::ShapeKind>& shapes,
                                    Condition condition, int trials, std::uint64_t base_seed,
                                    const PolicyFactory& policies, int threads);

// Task used for evaluation under a condition: the condition's tactile flag
// and eval_noise when configured.
grasp::TaskConfig evaluation_task(const ExperimentConfig& cfg, Condition condition);

// Condition recorded in the checkpoint metadata, or inferred from its
// observation size. Throws ConfigError when the observation size matches no
// condition or disagrees with the recorded one.
Condition checkpoint_condition(const nn::Checkpoint& ckpt, const ExperimentConfig& cfg);

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);

}  // namespace tacgrasp::experiment
