#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/grasp/episode.hpp"
#include "tacgrasp/grasp/task_io.hpp"

namespace tacgrasp::grasp {
namespace {

constexpr double kCubicCm = 1e-6;

// Closes every finger until its pad reports a load, then holds.
Policy tactile_closing(double threshold = 0.3) {
  return [threshold](const Observation& o) {
    Action a = Action::zero(6);
    const int per_pad = static_cast<int>(o.tactile.size()) / 3;
    for (int f = 0; f < 3; ++f) {
      if (o.tactile.segment(f * per_pad, per_pad).maxCoeff() > threshold) continue;
      a.d_joints[2 * f] = 0.02;
      a.d_joints[2 * f + 1] = 0.01;
    }
    return a;
  };
}

TaskConfig centred_task() {
  TaskConfig cfg;
  cfg.start_error_sigma = 0.0;
  return cfg;
}

TEST(Catalog, MatchedMassAndVolume) {
  for (ShapeKind s : kCatalogShapes) {
    const ObjectSpec o = catalog_object(s);
    EXPECT_NEAR(o.mass, kReferenceMass, 0.01) << shape_name(s);
    EXPECT_NEAR(physics::shape_volume(o.dimensions), reference_volume(), 5 * kCubicCm)
        << shape_name(s);
    EXPECT_EQ(shape_from_name(shape_name(s)), s);
  }
  EXPECT_NEAR(reference_volume() / kCubicCm, 113.097, 1e-3);
}

TEST(Catalog, UnknownShapeIsConfigError) {
  EXPECT_THROW(shape_from_name("torus"), ConfigError);
}

TEST(Reset, NoiselessObservationEqualsTruePose) {
  TaskConfig cfg;
  cfg.noise.pos_sigma = 0.0;
  cfg.noise.ori_sigma = 0.0;
  GraspEnv env(cfg);
  for (std::uint64_t seed : {0u, 7u, 99u}) {
    const Observation o = env.reset(seed);
    const Pose p = env.object_pose();
    EXPECT_EQ(o.object_pose_noisy.head<3>(), p.position);
    Quat q = p.orientation;
    if (q.w() < 0) q.coeffs() = -q.coeffs();
    EXPECT_EQ(o.object_pose_noisy[3], q.w());
    EXPECT_EQ(o.object_pose_noisy.tail<3>(), q.vec());
  }
}

TEST(Reset, SameSeedSameObservation) {
  GraspEnv env(TaskConfig{});
  const Eigen::VectorXd a = env.reset(42).flat();
  const Eigen::VectorXd b = env.reset(42).flat();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, env.reset(43).flat());
}

TEST(Reset, ObservationLengths) {
  TaskConfig cfg;
  GraspEnv te(cfg);
  EXPECT_EQ(te.reset(1).flat().size(), 68);
  EXPECT_EQ(te.observation_size(), 68);
  cfg.tactile = false;
  GraspEnv td(cfg);
  EXPECT_EQ(td.reset(1).flat().size(), 20);
  EXPECT_EQ(td.observation_size(), 20);
  EXPECT_EQ(td.action_size(), 12);
}

TEST(Reset, PositionNoiseStatistics) {
  TaskConfig cfg;
  cfg.settle_steps = 0;
  cfg.noise.pos_sigma = 0.01;
  GraspEnv env(cfg);
  const int n = 10000;
  Vec3 sum = Vec3::Zero(), sum_sq = Vec3::Zero();
  for (int i = 0; i < n; ++i) {
    const Observation o = env.reset(static_cast<std::uint64_t>(i));
    const Vec3 e = o.object_pose_noisy.head<3>() - env.object_pose().position;
    sum += e;
    sum_sq += e.cwiseProduct(e);
  }
  const Vec3 mean = sum / n;
  for (int k = 0; k < 3; ++k) {
    const double sd = std::sqrt(sum_sq[k] / n - mean[k] * mean[k]);
    EXPECT_LT(std::abs(mean[k]), 3 * 0.01 / 100) << "axis " << k;
    EXPECT_NEAR(sd, 0.01, 0.05 * 0.01) << "axis " << k;
  }
}

TEST(Reset, OrientationNoiseHasRequestedSpread) {
  TaskConfig cfg;
  cfg.settle_steps = 0;
  cfg.noise.ori_sigma = 0.05;
  GraspEnv env(cfg);
  double sum_sq = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const Observation o = env.reset(static_cast<std::uint64_t>(i));
    const Quat seen(o.object_pose_noisy[3], o.object_pose_noisy[4], o.object_pose_noisy[5],
                    o.object_pose_noisy[6]);
    const double angle = geodesic_angle(seen, env.object_pose().orientation);
    sum_sq += angle * angle;
  }
  EXPECT_NEAR(std::sqrt(sum_sq / n), 0.05, 0.05 * 0.05);
}

TEST(Reset, UnknownShapeRejected) {
  EXPECT_THROW(task_config_from_json({{"shape", "cube"}}), ConfigError);
}

std::vector<Pose> object_path(std::uint64_t noise_seed) {
  TaskConfig cfg;
  cfg.noise.seed = noise_seed;
  GraspEnv env(cfg);
  env.reset(3);
  std::vector<Pose> path;
  const Policy closing = [](const Observation&) {
    Action a = Action::zero(6);
    a.d_joints.setConstant(0.02);
    a.d_ee_pose[2] = -0.001;
    return a;
  };
  for (int i = 0; i < 60; ++i) {
    env.step(closing(env.observe()));
    path.push_back(env.object_pose());
  }
  return path;
}

TEST(Step, ObservationNoiseNeverTouchesDynamics) {
  const auto a = object_path(1);
  const auto b = object_path(2);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].position, b[i].position);
    EXPECT_EQ(a[i].orientation.coeffs(), b[i].orientation.coeffs());
  }
}

TEST(Step, ZeroActionKeepsStaticScene) {
  GraspEnv env(centred_task());
  env.reset(11);
  const Pose start = env.object_pose();
  const Eigen::VectorXd setpoint = env.setpoint();
  double first_reward = 0.0;
  for (int i = 0; i < 50; ++i) {
    const StepResult r = env.step(Action::zero(6));
    if (i == 0) first_reward = r.reward.total;
    EXPECT_NEAR(r.reward.total, first_reward, 1e-5);
  }
  EXPECT_LT((env.object_pose().position - start.position).norm(), 1e-6);
  EXPECT_LT(geodesic_angle(env.object_pose().orientation, start.orientation), 1e-6);
  EXPECT_LT((env.setpoint() - setpoint).norm(), 1e-12);
}

TEST(Step, IncrementsClampToLimits) {
  GraspEnv env(centred_task());
  env.reset(5);
  const Eigen::VectorXd before = env.setpoint();
  Action a = Action::zero(6);
  a.d_joints.setConstant(1.0);
  a.d_joints[1] = -1.0;
  a.d_ee_pose << 1.0, -1.0, 0.0005, 0, 0, 0;
  const GripperParams& g = env.config().gripper;
  const Action clamped = env.clamp_action(a);
  EXPECT_EQ(clamped.d_joints[0], g.max_joint_step);
  EXPECT_EQ(clamped.d_joints[1], -g.max_joint_step);
  EXPECT_EQ(clamped.d_ee_pose[0], g.max_translation_step);
  EXPECT_EQ(clamped.d_ee_pose[1], -g.max_translation_step);
  EXPECT_EQ(clamped.d_ee_pose[2], 0.0005);
  env.step(a);
  const Eigen::VectorXd applied = env.setpoint() - before;
  EXPECT_NEAR(applied[0], g.max_translation_step, 1e-15);
  EXPECT_NEAR(applied[1], -g.max_translation_step, 1e-15);
  EXPECT_NEAR(applied[7], g.max_joint_step, 1e-15);
  EXPECT_NEAR(applied[8], -g.max_joint_step, 1e-15);
}

TEST(Step, ClosingOnSphereMakesFingertipContact) {
  GraspEnv env(centred_task());
  const EpisodeTrace trace = run_episode(env, tactile_closing(), 0);
  ASSERT_EQ(trace.steps.size(), 200u);
  EXPECT_EQ(trace.steps.front().fingertip_contacts, 0);
  int best = 0;
  for (const auto& s : trace.steps) best = std::max(best, s.fingertip_contacts);
  EXPECT_GE(best, 2);
}

TEST(Step, PadsReadOnlyWhileTouching) {
  GraspEnv env(centred_task());
  Observation o = env.reset(2);
  EXPECT_EQ(o.tactile.cwiseAbs().maxCoeff(), 0.0);
  const Policy close = tactile_closing();
  bool touched = false;
  for (int i = 0; i < 60 && !touched; ++i) {
    const StepResult r = env.step(close(o));
    o = r.observation;
    touched = r.fingertip_contacts > 0;
    if (touched) {
      EXPECT_GT(o.tactile.maxCoeff(), 0.0);
    }
  }
  EXPECT_TRUE(touched);
}

TEST(Step, HorizonEndsEpisode) {
  TaskConfig cfg = centred_task();
  cfg.horizon = 3;
  GraspEnv env(cfg);
  env.reset(0);
  EXPECT_FALSE(env.step(Action::zero(6)).done);
  EXPECT_FALSE(env.step(Action::zero(6)).done);
  EXPECT_TRUE(env.step(Action::zero(6)).done);
  EXPECT_THROW(env.step(Action::zero(6)), std::logic_error);
}

TEST(Success, OracleGraspSucceeds) {
  GraspEnv env(centred_task());
  const EpisodeTrace trace = run_episode(env, tactile_closing(), 4);
  EXPECT_TRUE(is_success(trace, env.config().success));
}

TEST(Success, UntouchedObjectFails) {
  GraspEnv env(centred_task());
  const EpisodeTrace trace =
      run_episode(env, [](const Observation&) { return Action::zero(6); }, 4);
  EXPECT_FALSE(is_success(trace, env.config().success));
}

EpisodeTrace held_trace(int n) {
  EpisodeTrace t;
  for (int i = 0; i < n; ++i) {
    TraceStep s;
    s.step = i + 1;
    s.fingertip_contacts = 3;
    s.position_error = 0.005;
    s.orientation_error = 0.05;
    t.steps.push_back(s);
  }
  return t;
}

TEST(Success, SlipInHoldWindowFails) {
  const SuccessCriteria c;
  EpisodeTrace t = held_trace(200);
  EXPECT_TRUE(is_success(t, c));
  for (int i = 190; i < 200; ++i) {
    t.steps[i].fingertip_contacts = 0;
    t.steps[i].position_error = 0.03;
  }
  EXPECT_FALSE(is_success(t, c));

  EpisodeTrace dropped = held_trace(200);
  dropped.steps[180].fingertip_contacts = 1;
  EXPECT_FALSE(is_success(dropped, c));
  EpisodeTrace rolled = held_trace(200);
  rolled.steps[199].orientation_error = 0.25;
  EXPECT_FALSE(is_success(rolled, c));
  EpisodeTrace early = held_trace(200);
  early.steps[100].fingertip_contacts = 0;  // outside the window
  EXPECT_TRUE(is_success(early, c));
  EXPECT_FALSE(is_success(held_trace(10), c));
  EpisodeTrace failed = held_trace(200);
  failed.failed = true;
  EXPECT_FALSE(is_success(failed, c));
}

TEST(Trace, CsvHasOneRowPerStep) {
  TaskConfig cfg = centred_task();
  cfg.horizon = 5;
  GraspEnv env(cfg);
  const EpisodeTrace trace = run_episode(env, tactile_closing(), 1);
  std::ostringstream out;
  write_trace_csv(out, trace);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
  EXPECT_EQ(text.rfind("step,a0,", 0), 0u);
}

TEST(TaskIo, RoundTripAndFieldErrors) {
  TaskConfig cfg;
  cfg.shape = ShapeKind::kEllipsoid;
  cfg.tactile = false;
  cfg.reward.beta = 3.5;
  cfg.noise.seed = 77;
  cfg.success.window = 10;
  const TaskConfig back = task_config_from_json(task_config_to_json(cfg));
  EXPECT_EQ(task_config_to_json(back), task_config_to_json(cfg));

  try {
    task_config_from_json({{"reward", {{"beta", -1.0}}}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "reward.beta");
  }
  try {
    task_config_from_json({{"noise", {{"pos_sigma", "big"}}}}, "task");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "task.noise.pos_sigma");
  }
  try {
    task_config_from_json({{"horizn", 10}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "horizn");
  }
}

}  // namespace
}  // namespace tacgrasp::grasp
