#include "tacgrasp/grasp/grasp_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::grasp {

using physics::BodyKind;

namespace {

constexpr std::uint32_t kPlaneContype = 1;
constexpr std::uint32_t kObjectContype = 3;
constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

std::mt19937_64 make_rng(std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

Vec3 shape_inertia(const ObjectSpec& o) {
  return std::visit(
      [&](const auto& s) -> Vec3 {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, physics::Sphere>) {
          return physics::solid_sphere_inertia(o.mass, s.radius);
        } else if constexpr (std::is_same_v<S, physics::Capsule>) {
          return physics::solid_capsule_inertia(o.mass, s.radius, s.half_length);
        } else if constexpr (std::is_same_v<S, physics::Cylinder>) {
          return physics::solid_cylinder_inertia(o.mass, s.radius, s.half_length);
        } else if constexpr (std::is_same_v<S, physics::Ellipsoid>) {
          return physics::solid_ellipsoid_inertia(o.mass, s.radii);
        } else if constexpr (std::is_same_v<S, physics::Box>) {
          return physics::solid_box_inertia(o.mass, s.half_extents);
        } else {
          throw ConfigError("object shape has no volume", "shape");
        }
      },
      o.dimensions);
}

Eigen::VectorXd pose_vector(const Pose& p) {
  Quat q = p.orientation.normalized();
  if (q.w() < 0) q.coeffs() = -q.coeffs();
  Eigen::VectorXd v(7);
  v << p.position, q.w(), q.x(), q.y(), q.z();
  return v;
}

}  // namespace

void validate_task_config(const TaskConfig& cfg) {
  validate_reward_config(cfg.reward);
  validate_gripper_params(cfg.gripper);
  if (!(cfg.noise.pos_sigma >= 0)) throw ConfigError("must be non-negative", "noise.pos_sigma");
  if (!(cfg.noise.ori_sigma >= 0)) throw ConfigError("must be non-negative", "noise.ori_sigma");
  if (cfg.horizon < 1) throw ConfigError("must be at least 1", "horizon");
  if (cfg.substeps < 1) throw ConfigError("must be at least 1", "substeps");
  if (!(cfg.dt > 0)) throw ConfigError("must be positive", "dt");
  if (cfg.solver_iterations < 1) throw ConfigError("must be at least 1", "solver_iterations");
  if (cfg.success.window < 1) throw ConfigError("must be at least 1", "success.window");
  if (cfg.success.min_fingertips < 0) {
    throw ConfigError("must be non-negative", "success.min_fingertips");
  }
  if (!(cfg.success.max_position_error > 0)) {
    throw ConfigError("must be positive", "success.max_position_error");
  }
  if (!(cfg.success.max_orientation_error > 0)) {
    throw ConfigError("must be positive", "success.max_orientation_error");
  }
  if (!(cfg.f_contact_min >= 0)) throw ConfigError("must be non-negative", "f_contact_min");
  if (!(cfg.placement_jitter >= 0)) throw ConfigError("must be non-negative", "placement_jitter");
  if (!(cfg.start_error_sigma >= 0)) {
    throw ConfigError("must be non-negative", "start_error.sigma");
  }
  if (!(cfg.start_error_clip >= 0)) throw ConfigError("must be non-negative", "start_error.clip");
  if (!(cfg.palm_clearance > 0)) throw ConfigError("must be positive", "palm_clearance");
  if (static_cast<int>(cfg.preshape.size()) != cfg.gripper.joints_per_finger) {
    throw ConfigError("needs one angle per joint of a finger", "preshape");
  }
  if ((cfg.workspace_half_extent.array() < 0).any()) {
    throw ConfigError("must be non-negative", "workspace_half_extent");
  }
  if (cfg.settle_steps < 0) throw ConfigError("must be non-negative", "settle_steps");
  if (cfg.tactile_stride < 1) throw ConfigError("must be at least 1", "tactile_stride");
  if (cfg.pad_layout.rows < 1 || cfg.pad_layout.cols < 1) {
    throw ConfigError("needs at least one taxel", "pad_layout");
  }
  try {
    physics::validate_impedance(cfg.impedance);
  } catch (const ModelError& e) {
    throw ConfigError(e.what(), "impedance");
  }
}

Eigen::VectorXd Observation::flat() const {
  Eigen::VectorXd v(joint_angles.size() + ee_pose.size() + object_pose_noisy.size() +
                    tactile.size());
  v << joint_angles, ee_pose, object_pose_noisy, tactile;
  return v;
}

Action Action::zero(int n_joints) {
  Action a;
  a.d_joints = Eigen::VectorXd::Zero(n_joints);
  return a;
}

Eigen::VectorXd Action::flat() const {
  Eigen::VectorXd v(d_joints.size() + 6);
  v << d_joints, d_ee_pose;
  return v;
}

Action Action::from_flat(const Eigen::VectorXd& v, int n_joints) {
  if (v.size() != n_joints + 6) {
    throw ArgumentError("action has " + std::to_string(v.size()) + " entries, expected " +
                        std::to_string(n_joints + 6));
  }
  Action a;
  a.d_joints = v.head(n_joints);
  a.d_ee_pose = v.tail<6>();
  return a;
}

GraspEnv::GraspEnv(TaskConfig cfg) : cfg_(std::move(cfg)) {
  validate_task_config(cfg_);
  object_ = catalog_object(cfg_.shape);
}

Observation GraspEnv::reset(ShapeKind shape, const NoiseSpec& noise, std::uint64_t seed) {
  cfg_.shape = shape;
  cfg_.noise = noise;
  validate_task_config(cfg_);
  object_ = catalog_object(shape);
  return reset(seed);
}

void GraspEnv::build_scene(std::mt19937_64& rng) {
  world_ = physics::WorldState{};
  world_.dt = cfg_.dt;
  world_.solver_iterations = cfg_.solver_iterations;
  world_.impedance = cfg_.impedance;

  physics::RigidBodyState ground;
  ground.name = "ground";
  ground.kind = BodyKind::kStatic;
  const int ground_body = world_.add_body(ground);
  physics::GeomSpec plane;
  plane.name = "ground";
  plane.shape = physics::Plane{};
  plane.contype = plane.conaffinity = kPlaneContype;
  plane.mu1 = object_.mu1;
  plane.parent_body = ground_body;
  world_.add_geom(plane);

  std::uniform_real_distribution<double> jitter(-cfg_.placement_jitter, cfg_.placement_jitter);
  const double jx = cfg_.placement_jitter > 0 ? jitter(rng) : 0.0;
  const double jy = cfg_.placement_jitter > 0 ? jitter(rng) : 0.0;
  physics::RigidBodyState body;
  body.name = std::string(shape_name(object_.shape));
  body.position = object_.target_pose.position + Vec3(jx, jy, 0.0);
  body.orientation = object_.target_pose.orientation;
  body.mass = object_.mass;
  body.inertia = physics::InertiaSpec::diagonal(shape_inertia(object_));
  target_.object_body = world_.add_body(body);
  physics::GeomSpec geom;
  geom.name = body.name;
  geom.shape = object_.dimensions;
  geom.contype = geom.conaffinity = kObjectContype;
  geom.mu1 = object_.mu1;
  geom.parent_body = target_.object_body;
  target_.object_geom = world_.add_geom(geom);

  Eigen::Vector2d error = Eigen::Vector2d::Zero();
  if (cfg_.start_error_sigma > 0) {
    std::normal_distribution<double> normal(0.0, cfg_.start_error_sigma);
    error = Eigen::Vector2d(normal(rng), normal(rng));
    if (error.norm() > cfg_.start_error_clip) error *= cfg_.start_error_clip / error.norm();
  }
  const Vec3 nominal = body.position + Vec3(0, 0, cfg_.palm_clearance);
  Pose base;
  base.position = nominal + Vec3(error.x(), error.y(), 0.0);
  Eigen::VectorXd joints(cfg_.gripper.n_fingers * cfg_.gripper.joints_per_finger);
  for (int i = 0; i < joints.size(); ++i) {
    joints[i] = cfg_.preshape[i % cfg_.gripper.joints_per_finger];
  }
  setpoint_ = make_config(base, joints);
  gripper_ = build_gripper(world_, cfg_.gripper, setpoint_,
                           {nominal - cfg_.workspace_half_extent,
                            nominal + cfg_.workspace_half_extent});

  pads_.clear();
  tactile::TaxelLayout layout = cfg_.pad_layout;
  layout.surface_offset = cfg_.gripper.link_radius;
  Pose pad_frame;
  pad_frame.position = Vec3(0, 0, 0.5 * cfg_.gripper.link_lengths.back());
  Mat3 axes;
  axes.col(0) = Vec3::UnitZ();   // along the link
  axes.col(1) = -Vec3::UnitY();
  axes.col(2) = Vec3::UnitX();   // towards the palm axis
  pad_frame.orientation = Quat(axes);
  for (int tip : gripper_.fingertip_geom_ids) {
    gripper_.pad_arrays.push_back(static_cast<int>(pads_.size()));
    pads_.push_back(tactile::TaxelArray::grid(layout, tip, pad_frame));
  }
}

Observation GraspEnv::reset(std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, 0);
  build_scene(rng);

  for (int i = 0; i < cfg_.settle_steps; ++i) {
    drive_gripper(world_, gripper_, setpoint_);
    physics::advance(world_);
    place_gripper(world_, gripper_, setpoint_);
  }
  for (auto& pad : pads_) pad.reset_state();

  target_.object_pose = object_pose();
  target_.config = setpoint_;
  target_.f_contact_min = cfg_.f_contact_min;

  std::mt19937_64 noise_rng = make_rng(cfg_.noise.seed, seed ^ kNoiseStream);
  noise_position_.setZero();
  noise_rotation_ = Quat::Identity();
  if (cfg_.noise.pos_sigma > 0) {
    std::normal_distribution<double> normal(0.0, cfg_.noise.pos_sigma);
    for (int k = 0; k < 3; ++k) noise_position_[k] = normal(noise_rng);
  }
  if (cfg_.noise.ori_sigma > 0) {
    std::normal_distribution<double> unit(0.0, 1.0);
    Vec3 axis(unit(noise_rng), unit(noise_rng), unit(noise_rng));
    axis.normalize();
    std::normal_distribution<double> angle(0.0, cfg_.noise.ori_sigma);
    noise_rotation_ = Quat(Eigen::AngleAxisd(angle(noise_rng), axis));
  }

  steps_ = 0;
  done_ = false;
  failed_ = false;
  has_reset_ = true;
  return observe();
}

Pose GraspEnv::object_pose() const {
  return world_.bodies.at(target_.object_body).pose();
}

Eigen::VectorXd GraspEnv::increment_limits() const {
  const GripperParams& p = cfg_.gripper;
  Eigen::VectorXd limits(p.n_fingers * p.joints_per_finger + 6);
  limits.setConstant(p.max_joint_step);
  limits.tail<6>() << Vec3::Constant(p.max_translation_step), Vec3::Constant(p.max_rotation_step);
  return limits;
}

Action GraspEnv::clamp_action(const Action& action) const {
  const Eigen::VectorXd limits = increment_limits();
  const Eigen::VectorXd flat = action.flat();
  if (flat.size() != limits.size()) {
    throw ArgumentError("action has " + std::to_string(flat.size()) + " entries, expected " +
                        std::to_string(limits.size()));
  }
  return Action::from_flat(flat.cwiseMax(-limits).cwiseMin(limits),
                           static_cast<int>(limits.size()) - 6);
}

void GraspEnv::substep(const Eigen::VectorXd& config) {
  drive_gripper(world_, gripper_, config);
  physics::advance(world_);
  place_gripper(world_, gripper_, config);
  std::vector<physics::ContactPoint> touching;
  for (auto& pad : pads_) {
    touching.clear();
    for (const auto& c : world_.contacts) {
      if (c.involves(pad.pad_geom)) touching.push_back(c);
    }
    tactile::update_taxels(pad, world_, touching, world_.dt);
  }
}

StepResult GraspEnv::step(const Action& action) {
  if (!has_reset_ || done_) throw std::logic_error("step called on a finished episode");
  const Action a = clamp_action(action);
  const Eigen::VectorXd next = apply_increment(gripper_, setpoint_, a.d_joints, a.d_ee_pose);
  try {
    for (int s = 1; s <= cfg_.substeps; ++s) {
      substep(interpolate_config(setpoint_, next, static_cast<double>(s) / cfg_.substeps));
    }
  } catch (const SimulationDiverged&) {
    failed_ = true;
    done_ = true;
    throw;
  }
  setpoint_ = next;
  ++steps_;
  done_ = steps_ >= cfg_.horizon;

  StepResult r;
  r.reward = compute_reward(world_, gripper_, target_, setpoint_, cfg_.reward);
  r.fingertip_contacts =
      fingertip_contact_count(world_, gripper_, target_.object_geom, cfg_.f_contact_min);
  const Pose p = object_pose();
  r.position_error = (p.position - target_.object_pose.position).norm();
  r.orientation_error = geodesic_angle(p.orientation, target_.object_pose.orientation);
  r.observation = observe();
  r.done = done_;
  return r;
}

Observation GraspEnv::observe() const {
  Observation o;
  o.joint_angles = setpoint_.tail(gripper_.n_joints());
  o.ee_pose = pose_vector(config_base(setpoint_));
  const Pose p = object_pose();
  o.object_pose_noisy = pose_vector({p.position + noise_position_, noise_rotation_ * p.orientation});
  if (cfg_.tactile) {
    o.tactile = tactile::tactile_observation(pads_, cfg_.tactile_stride);
  } else {
    o.tactile.resize(0);
  }
  return o;
}

int GraspEnv::observation_size() const {
  const GripperParams& p = cfg_.gripper;
  int n = p.n_fingers * p.joints_per_finger + 14;
  if (cfg_.tactile) {
    const int r = (cfg_.pad_layout.rows + cfg_.tactile_stride - 1) / cfg_.tactile_stride;
    const int c = (cfg_.pad_layout.cols + cfg_.tactile_stride - 1) / cfg_.tactile_stride;
    n += p.n_fingers * r * c;
  }
  return n;
}

int GraspEnv::action_size() const {
  return cfg_.gripper.n_fingers * cfg_.gripper.joints_per_finger + 6;
}

}  // namespace tacgrasp::grasp
