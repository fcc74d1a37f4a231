#include "tacgrasp/grasp/gripper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::grasp {

using physics::BodyKind;
using physics::WorldState;

void validate_gripper_params(const GripperParams& p) {
  if (p.n_fingers < 1) throw ConfigError("must be at least 1", "gripper.n_fingers");
  if (p.joints_per_finger < 1) {
    throw ConfigError("must be at least 1", "gripper.joints_per_finger");
  }
  if (static_cast<int>(p.link_lengths.size()) != p.joints_per_finger) {
    throw ConfigError("needs one length per joint", "gripper.link_lengths");
  }
  for (double l : p.link_lengths) {
    if (!(l > 0)) throw ConfigError("lengths must be positive", "gripper.link_lengths");
  }
  if (!(p.mount_radius > 0)) throw ConfigError("must be positive", "gripper.mount_radius");
  if (!(p.link_radius > 0)) throw ConfigError("must be positive", "gripper.link_radius");
  if (!(p.palm_radius > 0)) throw ConfigError("must be positive", "gripper.palm_radius");
  if (!(p.joint_limit.min < p.joint_limit.max)) {
    throw ConfigError("min must be below max", "gripper.joint_limit");
  }
  if (!(p.max_joint_step >= 0) || !(p.max_translation_step >= 0) ||
      !(p.max_rotation_step >= 0)) {
    throw ConfigError("increment limits must be non-negative", "gripper.increment_limits");
  }
  if (!(p.mu1 >= 0)) throw ConfigError("must be non-negative", "gripper.mu1");
}

Eigen::VectorXd make_config(const Pose& base, const Eigen::VectorXd& joints) {
  Eigen::VectorXd c(7 + joints.size());
  const Quat q = base.orientation.normalized();
  c << base.position, q.w(), q.x(), q.y(), q.z(), joints;
  return c;
}

Pose config_base(const Eigen::VectorXd& config) {
  return {config.head<3>(), Quat(config[3], config[4], config[5], config[6]).normalized()};
}

namespace {

Vec3 mount_direction(int finger, int n_fingers) {
  const double phi = 2.0 * std::numbers::pi * finger / n_fingers;
  return {std::cos(phi), std::sin(phi), 0.0};
}

// Link frame at zero angle: x towards the palm axis, z down the link.
Mat3 rest_frame(const Vec3& u) {
  const Vec3 w = Vec3::UnitZ().cross(u);
  Mat3 r;
  r.col(0) = -u;
  r.col(1) = w;
  r.col(2) = -Vec3::UnitZ();
  return r;
}

void check_layout(const GripperConfig& gripper, const Eigen::VectorXd& config) {
  if (config.size() != gripper.config_size()) {
    throw ArgumentError("configuration has " + std::to_string(config.size()) +
                        " entries, gripper expects " + std::to_string(gripper.config_size()));
  }
}

}  // namespace

std::vector<Pose> link_poses(const GripperConfig& gripper, const Eigen::VectorXd& config) {
  check_layout(gripper, config);
  const GripperParams& p = gripper.params;
  const Pose base = config_base(config);
  std::vector<Pose> poses;
  poses.reserve(gripper.n_joints());
  for (int f = 0; f < gripper.n_fingers; ++f) {
    const Vec3 u = mount_direction(f, gripper.n_fingers);
    const Vec3 w = Vec3::UnitZ().cross(u);
    const Mat3 rest = rest_frame(u);
    Vec3 joint = p.mount_radius * u;
    double angle = 0.0;
    for (int j = 0; j < gripper.joints_per_finger; ++j) {
      angle += config[7 + f * gripper.joints_per_finger + j];
      const Mat3 r = Eigen::AngleAxisd(angle, w).toRotationMatrix() * rest;
      const Vec3 along = r.col(2);
      const double len = p.link_lengths[j];
      const Pose local{joint + 0.5 * len * along, Quat(r)};
      poses.push_back(base * local);
      joint += len * along;
    }
  }
  return poses;
}

GripperConfig build_gripper(WorldState& world, const GripperParams& params,
                            const Eigen::VectorXd& config, const WorkspaceBox& workspace) {
  validate_gripper_params(params);
  GripperConfig g;
  g.params = params;
  g.n_fingers = params.n_fingers;
  g.joints_per_finger = params.joints_per_finger;
  g.joint_limits.assign(g.n_joints(), params.joint_limit);
  g.base_pose_limits = workspace;
  check_layout(g, config);

  physics::RigidBodyState palm;
  palm.name = "palm";
  palm.kind = BodyKind::kKinematic;
  const Pose base = config_base(config);
  palm.position = base.position;
  palm.orientation = base.orientation;
  g.palm_body = world.add_body(palm);
  physics::GeomSpec palm_geom;
  palm_geom.name = "palm";
  palm_geom.shape = physics::Sphere{params.palm_radius};
  palm_geom.contype = palm_geom.conaffinity = kGripperContype;
  palm_geom.mu1 = params.mu1;
  palm_geom.parent_body = g.palm_body;
  g.palm_geom = world.add_geom(palm_geom);

  const std::vector<Pose> poses = link_poses(g, config);
  for (int f = 0; f < g.n_fingers; ++f) {
    for (int j = 0; j < g.joints_per_finger; ++j) {
      const int index = f * g.joints_per_finger + j;
      const std::string name = "finger" + std::to_string(f) + "_link" + std::to_string(j);
      physics::RigidBodyState link;
      link.name = name;
      link.kind = BodyKind::kKinematic;
      link.position = poses[index].position;
      link.orientation = poses[index].orientation;
      g.link_bodies.push_back(world.add_body(link));
      physics::GeomSpec geom;
      geom.name = name;
      geom.shape = physics::Capsule{params.link_radius, 0.5 * params.link_lengths[j]};
      geom.contype = geom.conaffinity = kGripperContype;
      geom.mu1 = params.mu1;
      geom.parent_body = g.link_bodies.back();
      g.link_geoms.push_back(world.add_geom(geom));
      if (j == g.joints_per_finger - 1) g.fingertip_geom_ids.push_back(g.link_geoms.back());
    }
  }
  return g;
}

void place_gripper(WorldState& world, const GripperConfig& gripper,
                   const Eigen::VectorXd& config) {
  const Pose base = config_base(config);
  world.bodies[gripper.palm_body].position = base.position;
  world.bodies[gripper.palm_body].orientation = base.orientation;
  const std::vector<Pose> poses = link_poses(gripper, config);
  for (std::size_t i = 0; i < poses.size(); ++i) {
    auto& body = world.bodies[gripper.link_bodies[i]];
    body.position = poses[i].position;
    body.orientation = poses[i].orientation;
  }
}

void drive_gripper(WorldState& world, const GripperConfig& gripper,
                   const Eigen::VectorXd& config) {
  const auto drive = [&](int body_id, const Pose& target) {
    auto& body = world.bodies[body_id];
    body.linear_velocity = (target.position - body.position) / world.dt;
    body.angular_velocity =
        rotation_vector(target.orientation * body.orientation.conjugate()) / world.dt;
  };
  drive(gripper.palm_body, config_base(config));
  const std::vector<Pose> poses = link_poses(gripper, config);
  for (std::size_t i = 0; i < poses.size(); ++i) drive(gripper.link_bodies[i], poses[i]);
}

Eigen::VectorXd interpolate_config(const Eigen::VectorXd& from, const Eigen::VectorXd& to,
                                   double s) {
  if (from.size() != to.size() || from.size() < 7) {
    throw ArgumentError("configuration layouts differ");
  }
  Eigen::VectorXd out = from + s * (to - from);
  const Quat q = config_base(from).orientation.slerp(s, config_base(to).orientation);
  out.segment<4>(3) << q.w(), q.x(), q.y(), q.z();
  return out;
}

Eigen::VectorXd apply_increment(const GripperConfig& gripper, const Eigen::VectorXd& config,
                                const Eigen::VectorXd& d_joints, const Vec6& d_ee_pose) {
  check_layout(gripper, config);
  if (d_joints.size() != gripper.n_joints()) {
    throw ArgumentError("joint increment has the wrong length");
  }
  Pose base = config_base(config);
  base.position = (base.position + d_ee_pose.head<3>())
                      .cwiseMax(gripper.base_pose_limits.min)
                      .cwiseMin(gripper.base_pose_limits.max);
  base.orientation = normalized(quat_from_rotation_vector(d_ee_pose.tail<3>()) * base.orientation);
  Eigen::VectorXd joints = config.tail(gripper.n_joints()) + d_joints;
  for (int i = 0; i < joints.size(); ++i) {
    joints[i] = std::clamp(joints[i], gripper.joint_limits[i].min, gripper.joint_limits[i].max);
  }
  return make_config(base, joints);
}

Eigen::VectorXd grasp_config_diff(const Eigen::VectorXd& current, const Eigen::VectorXd& target) {
  if (current.size() != target.size() || current.size() < 7) {
    throw ArgumentError("configuration layouts differ: " + std::to_string(current.size()) +
                        " vs " + std::to_string(target.size()));
  }
  Eigen::VectorXd diff = current - target;
  const Quat qc(current[3], current[4], current[5], current[6]);
  const Quat qt(target[3], target[4], target[5], target[6]);
  diff.segment<3>(3) = rotation_vector(qt.normalized().conjugate() * qc.normalized());
  diff[6] = 0.0;
  return diff;
}

int fingertip_contact_count(const WorldState& world, const GripperConfig& gripper,
                            int object_geom, double f_min) {
  int count = 0;
  for (int tip : gripper.fingertip_geom_ids) {
    const bool pressing = std::any_of(
        world.contacts.begin(), world.contacts.end(), [&](const physics::ContactPoint& c) {
          return c.involves(tip) && c.other(tip) == object_geom && c.normal_force > f_min;
        });
    count += pressing ? 1 : 0;
  }
  return count;
}

}  // namespace tacgrasp::grasp
