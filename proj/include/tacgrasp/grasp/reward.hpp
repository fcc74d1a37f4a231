#pragma once

// Grasp reward:
//   total = q_fingertip - z_hand - z_fjoint - o_diff - d_diff
//   q_fingertip = beta * T
//   z_hand      = gamma * |G_diff[:3]|
//   z_fjoint    = |G_diff[7:]|
//   d_diff      = pos_scale * |p_object - p_target|
//   o_diff      = ori_scale * angle(q_object, q_target)
// where T counts fingertips pressing on the object.

#include <Eigen/Core>

#include "tacgrasp/grasp/gripper.hpp"

namespace tacgrasp::grasp {

struct RewardConfig {
  double beta = 2.0;
  double gamma = 10.0;
  double pos_scale = 10.0;
  double ori_scale = 50.0;
  // When set, an episode step with no fingertip contact earns -beta instead of 0.
  bool no_contact_penalty = false;
};

void validate_reward_config(const RewardConfig& cfg);

struct RewardBreakdown {
  double q_fingertip = 0.0;
  double z_hand = 0.0;
  double z_fjoint = 0.0;
  double d_diff = 0.0;
  double o_diff = 0.0;
  double total = 0.0;
};

// What the object and gripper are measured against.
struct GraspTarget {
  int object_body = -1;
  int object_geom = -1;
  Pose object_pose;
  Eigen::VectorXd config;
  double f_contact_min = 0.1;
};

RewardBreakdown reward_from_terms(int fingertip_contacts, double hand_displacement,
                                  double joint_deviation, double position_error,
                                  double orientation_error, const RewardConfig& cfg);

RewardBreakdown compute_reward(const physics::WorldState& world, const GripperConfig& gripper,
                               const GraspTarget& target, const Eigen::VectorXd& config,
                               const RewardConfig& cfg);

}  // namespace tacgrasp::grasp
