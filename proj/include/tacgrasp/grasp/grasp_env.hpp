#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "tacgrasp/grasp/catalog.hpp"
#include "tacgrasp/grasp/gripper.hpp"
#include "tacgrasp/grasp/reward.hpp"
#include "tacgrasp/tactile/taxel_array.hpp"

namespace tacgrasp::grasp {

struct NoiseSpec {
  double pos_sigma = 0.01;   // m, per axis
  double ori_sigma = 0.05;   // rad, rotation angle about a random axis
  std::uint64_t seed = 0;
};

struct SuccessCriteria {
  int window = 25;  // final control steps that must all satisfy the bounds
  int min_fingertips = 2;
  double max_position_error = 0.02;
  double max_orientation_error = 0.2;
};

struct TaskConfig {
  ShapeKind shape = ShapeKind::kSphere;
  NoiseSpec noise;
  RewardConfig reward;
  SuccessCriteria success;
  bool tactile = true;
  int horizon = 200;   // control steps
  int substeps = 4;    // dynamics steps per control step
  double dt = 0.002;
  int solver_iterations = 20;
  physics::ImpedanceParams impedance;
  double f_contact_min = 0.1;  // N

  // Object placement: uniform in a square of this half-width around the origin.
  double placement_jitter = 0.03;
  // Start pose of the palm: centred above the object, displaced in the plane
  // by a Gaussian error of this sigma, clipped to the given radius.
  double start_error_sigma = 0.01;
  double start_error_clip = 0.02;
  double palm_clearance = 0.08;  // palm height above the object centre
  std::vector<double> preshape = {-0.15, 0.15};  // per joint within a finger
  Vec3 workspace_half_extent{0.05, 0.05, 0.04};
  int settle_steps = 300;

  GripperParams gripper;
  // Pad grid centred on the distal end of each fingertip link.
  tactile::TaxelLayout pad_layout{.pitch = 0.0025};
  int tactile_stride = 2;
};

void validate_task_config(const TaskConfig& cfg);

struct Observation {
  Eigen::VectorXd joint_angles;
  Eigen::VectorXd ee_pose;            // position, quaternion w x y z
  Eigen::VectorXd object_pose_noisy;  // position, quaternion w x y z
  Eigen::VectorXd tactile;            // empty when tactile feedback is off

  Eigen::VectorXd flat() const;
};

struct Action {
  Eigen::VectorXd d_joints;
  Vec6 d_ee_pose = Vec6::Zero();  // translation (m) then rotation vector (rad)

  static Action zero(int n_joints);
  Eigen::VectorXd flat() const;
  static Action from_flat(const Eigen::VectorXd& v, int n_joints);
};

struct StepResult {
  Observation observation;
  RewardBreakdown reward;
  int fingertip_contacts = 0;
  double position_error = 0.0;
  double orientation_error = 0.0;
  bool done = false;
  bool failed = false;
};

class GraspEnv {
 public:
  explicit GraspEnv(TaskConfig cfg);

  // Rebuilds the scene. `seed` drives the object placement and palm start
  // error; the observation noise is drawn from noise.seed mixed with `seed`,
  // so changing noise.seed never changes the simulated trajectory.
  Observation reset(std::uint64_t seed);
  Observation reset(ShapeKind shape, const NoiseSpec& noise, std::uint64_t seed);

  // Clamps the action, moves the gripper setpoint and advances `substeps`
  // dynamics steps. SimulationDiverged propagates after the episode is
  // marked failed.
  StepResult step(const Action& action);

  Action clamp_action(const Action& action) const;
  Eigen::VectorXd increment_limits() const;  // per flat action entry

  Observation observe() const;
  int observation_size() const;
  int action_size() const;

  const TaskConfig& config() const { return cfg_; }
  const physics::WorldState& world() const { return world_; }
  const GripperConfig& gripper() const { return gripper_; }
  const std::vector<tactile::TaxelArray>& pads() const { return pads_; }
  const GraspTarget& target() const { return target_; }
  const ObjectSpec& object() const { return object_; }
  Pose object_pose() const;
  const Eigen::VectorXd& setpoint() const { return setpoint_; }
  int steps_taken() const { return steps_; }
  bool done() const { return done_; }
  bool failed() const { return failed_; }

 private:
  void build_scene(std::mt19937_64& rng);
  void substep(const Eigen::VectorXd& config);

  TaskConfig cfg_;
  ObjectSpec object_;
  physics::WorldState world_;
  GripperConfig gripper_;
  std::vector<tactile::TaxelArray> pads_;
  GraspTarget target_;
  Eigen::VectorXd setpoint_;
  Vec3 noise_position_ = Vec3::Zero();
  Quat noise_rotation_ = Quat::Identity();
  int steps_ = 0;
  bool done_ = true;
  bool failed_ = false;
  bool has_reset_ = false;
};

}  // namespace tacgrasp::grasp
