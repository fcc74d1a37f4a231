#pragma once

#include <string>
#include <vector>

namespace tacgrasp::ppo {

struct EvalPoint {
  long long step = 0;  // environment steps
  double mean_reward = 0.0;
};

// Training is converged once every evaluation after the anchor stays within a
// relative band of the anchor's reward. The anchor is the latest evaluation
// at least `window` steps before the newest one; relative changes are taken
// against max(|anchor|, reward_floor).
struct ConvergenceMonitor {
  long long window = 30000;
  double threshold = 0.05;
  double reward_floor = 1.0;
  std::vector<EvalPoint> history;

  void record(long long step, double mean_reward);
  bool converged() const;
  // Largest relative deviation from the anchor, or a negative value when the
  // history does not yet span the window.
  double max_relative_change() const;
};

enum class TrainingPhase { kExplorationOscillation, kPolicyOptimization, kPlateau };

std::string phase_name(TrainingPhase p);

// Plateau when converged; otherwise oscillation when the last `window`
// evaluations have std / max(|mean|, reward_floor) above the threshold.
// Throws ArgumentError with fewer than two evaluations.
TrainingPhase classify_phase(const ConvergenceMonitor& monitor, double oscillation_threshold,
                             int window = 5);

}  // namespace tacgrasp::ppo
