#include "tacgrasp/grasp/episode.hpp"

#include <iomanip>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::grasp {

double EpisodeTrace::total_reward() const {
  double sum = 0.0;
  for (const auto& s : steps) sum += s.reward.total;
  return sum;
}

bool is_success(const EpisodeTrace& trace, const SuccessCriteria& criteria) {
  if (trace.failed) return false;
  const int n = static_cast<int>(trace.steps.size());
  if (n < criteria.window) return false;
  for (int i = n - criteria.window; i < n; ++i) {
    const TraceStep& s = trace.steps[i];
    if (s.fingertip_contacts < criteria.min_fingertips) return false;
    if (!(s.position_error < criteria.max_position_error)) return false;
    if (!(s.orientation_error < criteria.max_orientation_error)) return false;
  }
  return true;
}

EpisodeTrace run_episode(GraspEnv& env, const Policy& policy, std::uint64_t seed) {
  EpisodeTrace trace;
  trace.seed = seed;
  Observation obs = env.reset(seed);
  while (!env.done()) {
    const Action action = env.clamp_action(policy(obs));
    StepResult r;
    try {
      r = env.step(action);
    } catch (const SimulationDiverged&) {
      trace.failed = true;
      break;
    }
    TraceStep s;
    s.step = env.steps_taken();
    s.action = action.flat();
    s.reward = r.reward;
    s.fingertip_contacts = r.fingertip_contacts;
    s.position_error = r.position_error;
    s.orientation_error = r.orientation_error;
    s.tactile_sum = r.observation.tactile.sum();
    s.object_pose_noisy = r.observation.object_pose_noisy;
    trace.steps.push_back(std::move(s));
    obs = std::move(r.observation);
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const EpisodeTrace& trace) {
  const int n_action = trace.steps.empty() ? 0 : static_cast<int>(trace.steps[0].action.size());
  out << "step";
  for (int i = 0; i < n_action; ++i) out << ",a" << i;
  out << ",obj_x,obj_y,obj_z,tactile_sum,fingertips,q_fingertip,z_hand,z_fjoint,d_diff,o_diff,"
         "total,position_error,orientation_error\n";
  out << std::setprecision(17);
  for (const auto& s : trace.steps) {
    out << s.step;
    for (int i = 0; i < s.action.size(); ++i) out << ',' << s.action[i];
    out << ',' << s.object_pose_noisy[0] << ',' << s.object_pose_noisy[1] << ','
        << s.object_pose_noisy[2] << ',' << s.tactile_sum << ',' << s.fingertip_contacts << ','
        << s.reward.q_fingertip << ',' << s.reward.z_hand << ',' << s.reward.z_fjoint << ','
        << s.reward.d_diff << ',' << s.reward.o_diff << ',' << s.reward.total << ','
        << s.position_error << ',' << s.orientation_error << '\n';
  }
}

}  // namespace tacgrasp::grasp
