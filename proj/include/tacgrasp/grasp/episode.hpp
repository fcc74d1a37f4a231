#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "tacgrasp/grasp/grasp_env.hpp"

namespace tacgrasp::grasp {

struct TraceStep {
  int step = 0;
  Eigen::VectorXd action;  // flat, after clamping
  RewardBreakdown reward;
  int fingertip_contacts = 0;
  double position_error = 0.0;
  double orientation_error = 0.0;
  double tactile_sum = 0.0;
  Eigen::VectorXd object_pose_noisy;
};

struct EpisodeTrace {
  std::uint64_t seed = 0;
  std::vector<TraceStep> steps;
  bool failed = false;

  double total_reward() const;
};

// Every one of the final `window` steps keeps at least `min_fingertips`
// fingertips on the object and the object within the pose tolerances.
// Failed or too-short episodes never succeed.
bool is_success(const EpisodeTrace& trace, const SuccessCriteria& criteria);

using Policy = std::function<Action(const Observation&)>;

// Resets with `seed` and steps until done. A diverged simulation ends the
// episode with `failed` set instead of throwing.
EpisodeTrace run_episode(GraspEnv& env, const Policy& policy, std::uint64_t seed);

void write_trace_csv(std::ostream& out, const EpisodeTrace& trace);

}  // namespace tacgrasp::grasp
