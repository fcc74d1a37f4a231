#pragma once

// Parametric floating-base gripper: a spherical palm with n fingers of
// serial revolute links, all moved kinematically to prescribed setpoints.
//
// Configuration vectors are laid out as
//   [base position (3), base orientation w x y z (4), finger joints (n)]
// with the joints finger-major. Finger f is mounted on the palm rim at angle
// 2*pi*f/n. At zero joint angles every link points straight down; positive
// angles swing the finger towards the palm axis.

#include <vector>

#include <Eigen/Core>

#include "tacgrasp/physics/world.hpp"

namespace tacgrasp::grasp {

struct JointLimit {
  double min = -0.3;
  double max = 1.2;
};

struct WorkspaceBox {
  Vec3 min = Vec3::Constant(-1.0);
  Vec3 max = Vec3::Constant(1.0);
};

struct GripperParams {
  int n_fingers = 3;
  int joints_per_finger = 2;
  double mount_radius = 0.06;
  std::vector<double> link_lengths = {0.05, 0.025};  // proximal to distal
  double link_radius = 0.008;
  double palm_radius = 0.02;
  JointLimit joint_limit;
  double max_joint_step = 0.04;        // rad per control step
  double max_translation_step = 0.003; // m per control step
  double max_rotation_step = 0.02;     // rad per control step, per axis
  double mu1 = 0.8;
};

void validate_gripper_params(const GripperParams& p);

struct GripperConfig {
  int n_fingers = 0;
  int joints_per_finger = 0;
  std::vector<int> fingertip_geom_ids;  // distal link of each finger
  std::vector<int> pad_arrays;          // taxel array index per finger
  std::vector<JointLimit> joint_limits;
  WorkspaceBox base_pose_limits;

  GripperParams params;
  int palm_body = -1;
  int palm_geom = -1;
  std::vector<int> link_bodies;  // finger-major
  std::vector<int> link_geoms;

  int n_joints() const { return n_fingers * joints_per_finger; }
  int config_size() const { return 7 + n_joints(); }
};

inline constexpr std::uint32_t kGripperContype = 2;

Eigen::VectorXd make_config(const Pose& base, const Eigen::VectorXd& joints);
Pose config_base(const Eigen::VectorXd& config);

// Adds the palm and link bodies (kinematic) and their geoms to `world`.
GripperConfig build_gripper(physics::WorldState& world, const GripperParams& params,
                            const Eigen::VectorXd& config, const WorkspaceBox& workspace);

// World pose of every link body, finger-major.
std::vector<Pose> link_poses(const GripperConfig& gripper, const Eigen::VectorXd& config);

// Snaps all gripper bodies to `config`.
void place_gripper(physics::WorldState& world, const GripperConfig& gripper,
                   const Eigen::VectorXd& config);

// Sets body velocities that carry each gripper body to its pose at `config`
// over one dynamics step.
void drive_gripper(physics::WorldState& world, const GripperConfig& gripper,
                   const Eigen::VectorXd& config);

// Linear in position and joints, spherical in orientation.
Eigen::VectorXd interpolate_config(const Eigen::VectorXd& from, const Eigen::VectorXd& to,
                                   double s);

// Adds already clamped increments, keeping joints and base position in range.
// Rotation increments are world-frame rotation vectors.
Eigen::VectorXd apply_increment(const GripperConfig& gripper, const Eigen::VectorXd& config,
                                const Eigen::VectorXd& d_joints, const Vec6& d_ee_pose);

// Componentwise difference in the configuration layout; slots 3..5 hold the
// rotation vector of target^-1 * current and slot 6 is zero. Throws
// ArgumentError when the layouts differ.
Eigen::VectorXd grasp_config_diff(const Eigen::VectorXd& current, const Eigen::VectorXd& target);

// Fingertips with at least one contact on `object_geom` pressing harder
// than f_min.
int fingertip_contact_count(const physics::WorldState& world, const GripperConfig& gripper,
                            int object_geom, double f_min);

}  // namespace tacgrasp::grasp
