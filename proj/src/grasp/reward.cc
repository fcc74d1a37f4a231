#include "tacgrasp/grasp/reward.hpp"

#include "tacgrasp/errors.hpp"

namespace tacgrasp::grasp {

void validate_reward_config(const RewardConfig& cfg) {
  if (!(cfg.beta > 0)) throw ConfigError("must be positive", "reward.beta");
  if (!(cfg.gamma > 0)) throw ConfigError("must be positive", "reward.gamma");
  if (!(cfg.pos_scale > 0)) throw ConfigError("must be positive", "reward.pos_scale");
  if (!(cfg.ori_scale > 0)) throw ConfigError("must be positive", "reward.ori_scale");
}

RewardBreakdown reward_from_terms(int fingertip_contacts, double hand_displacement,
                                  double joint_deviation, double position_error,
                                  double orientation_error, const RewardConfig& cfg) {
  RewardBreakdown r;
  r.q_fingertip = cfg.beta * fingertip_contacts;
  if (cfg.no_contact_penalty && fingertip_contacts == 0) r.q_fingertip = -cfg.beta;
  r.z_hand = cfg.gamma * hand_displacement;
  r.z_fjoint = joint_deviation;
  r.d_diff = cfg.pos_scale * position_error;
  r.o_diff = cfg.ori_scale * orientation_error;
  r.total = r.q_fingertip - r.z_hand - r.z_fjoint - r.o_diff - r.d_diff;
  return r;
}

RewardBreakdown compute_reward(const physics::WorldState& world, const GripperConfig& gripper,
                               const GraspTarget& target, const Eigen::VectorXd& config,
                               const RewardConfig& cfg) {
  const int t = fingertip_contact_count(world, gripper, target.object_geom, target.f_contact_min);
  const Eigen::VectorXd diff = grasp_config_diff(config, target.config);
  const auto& object = world.bodies[target.object_body];
  return reward_from_terms(t, diff.head<3>().norm(), diff.tail(diff.size() - 7).norm(),
                           (object.position - target.object_pose.position).norm(),
                           geodesic_angle(object.orientation, target.object_pose.orientation),
                           cfg);
}

}  // namespace tacgrasp::grasp
