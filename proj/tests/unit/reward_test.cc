#include <random>

#include <gtest/gtest.h>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/grasp/reward.hpp"

namespace tacgrasp::grasp {
namespace {

using physics::ContactPoint;

TEST(RewardTerms, Examples) {
  const RewardConfig cfg;  // beta 2, gamma 10, pos 10, ori 50
  EXPECT_EQ(reward_from_terms(0, 0, 0, 0, 0, cfg).total, 0.0);
  EXPECT_EQ(reward_from_terms(3, 0, 0, 0, 0, cfg).total, 6.0);
  const RewardBreakdown r = reward_from_terms(3, 0.01, 0.2, 0.02, 0.01, cfg);
  EXPECT_NEAR(r.q_fingertip, 6.0, 1e-15);
  EXPECT_NEAR(r.z_hand, 0.1, 1e-15);
  EXPECT_NEAR(r.z_fjoint, 0.2, 1e-15);
  EXPECT_NEAR(r.d_diff, 0.2, 1e-15);
  EXPECT_NEAR(r.o_diff, 0.5, 1e-15);
  EXPECT_NEAR(r.total, 5.0, 1e-12);
}

TEST(RewardTerms, TotalIsSignedSumOfTerms) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> t(0, 3);
  for (int i = 0; i < 1000; ++i) {
    RewardConfig cfg{0.1 + 5 * u(rng), 0.1 + 20 * u(rng), 0.1 + 20 * u(rng), 0.1 + 80 * u(rng)};
    const RewardBreakdown r =
        reward_from_terms(t(rng), 0.05 * u(rng), u(rng), 0.05 * u(rng), u(rng), cfg);
    EXPECT_EQ(r.total, r.q_fingertip - r.z_hand - r.z_fjoint - r.o_diff - r.d_diff);
    EXPECT_GE(r.z_hand, 0.0);
    EXPECT_GE(r.z_fjoint, 0.0);
    EXPECT_GE(r.d_diff, 0.0);
    EXPECT_GE(r.o_diff, 0.0);
    EXPECT_LE(r.total, cfg.beta * 3);
  }
}

TEST(RewardTerms, SlopeInContactsIsBeta) {
  const RewardConfig cfg{1.5, 10, 10, 50};
  for (int t = 0; t < 3; ++t) {
    const double lo = reward_from_terms(t, 0.003, 0.4, 0.01, 0.05, cfg).total;
    const double hi = reward_from_terms(t + 1, 0.003, 0.4, 0.01, 0.05, cfg).total;
    EXPECT_GT(hi, lo);
    EXPECT_NEAR(hi - lo, 1.5, 1e-12);
  }
}

TEST(RewardTerms, OptionalNoContactPenalty) {
  RewardConfig cfg;
  cfg.no_contact_penalty = true;
  EXPECT_EQ(reward_from_terms(0, 0, 0, 0, 0, cfg).total, -2.0);
  EXPECT_EQ(reward_from_terms(1, 0, 0, 0, 0, cfg).total, 2.0);
}

TEST(RewardConfigCheck, ScalesMustBePositive) {
  EXPECT_NO_THROW(validate_reward_config({}));
  EXPECT_THROW(validate_reward_config({0.0, 10, 10, 50}), ConfigError);
  EXPECT_THROW(validate_reward_config({2, 10, -1, 50}), ConfigError);
}

Eigen::VectorXd config_with(const Vec3& p, const Quat& q, const Eigen::VectorXd& joints) {
  return make_config({p, q}, joints);
}

TEST(ConfigDiff, Examples) {
  const Eigen::VectorXd joints = Eigen::VectorXd::Constant(6, 0.1);
  const Eigen::VectorXd target = config_with(Vec3(0.1, 0.2, 0.3), Quat::Identity(), joints);
  EXPECT_EQ(grasp_config_diff(target, target), Eigen::VectorXd::Zero(13));

  const Eigen::VectorXd moved = config_with(Vec3(0.11, 0.2, 0.3), Quat::Identity(), joints);
  const Eigen::VectorXd d = grasp_config_diff(moved, target);
  EXPECT_NEAR(d[0], 0.01, 1e-15);
  EXPECT_EQ(d[1], 0.0);
  EXPECT_EQ(d[2], 0.0);
  EXPECT_EQ(d.tail(6).norm(), 0.0);

  Eigen::VectorXd bent = joints;
  bent[4] += 0.2;
  const Eigen::VectorXd dj =
      grasp_config_diff(config_with(Vec3(0.1, 0.2, 0.3), Quat::Identity(), bent), target);
  EXPECT_NEAR(dj.tail(6).norm(), 0.2, 1e-15);
  EXPECT_EQ(dj.head<3>().norm(), 0.0);
}

TEST(ConfigDiff, RotationSlotsHoldRelativeRotation) {
  const Eigen::VectorXd joints = Eigen::VectorXd::Zero(6);
  const Quat qt(Eigen::AngleAxisd(0.4, Vec3::UnitX()));
  const Quat qc = qt * Quat(Eigen::AngleAxisd(0.3, Vec3::UnitZ()));
  const Eigen::VectorXd d =
      grasp_config_diff(config_with(Vec3::Zero(), qc, joints), config_with(Vec3::Zero(), qt, joints));
  EXPECT_NEAR((d.segment<3>(3) - Vec3(0, 0, 0.3)).norm(), 0.0, 1e-12);
  EXPECT_EQ(d[6], 0.0);
}

TEST(ConfigDiff, SlicesIgnoreOrientation) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd a(13), b(13);
    for (int k = 0; k < 13; ++k) {
      a[k] = n(rng);
      b[k] = n(rng);
    }
    Eigen::VectorXd a2 = a;
    a2.segment<4>(3) << n(rng), n(rng), n(rng), n(rng);
    const Eigen::VectorXd d1 = grasp_config_diff(a, b);
    const Eigen::VectorXd d2 = grasp_config_diff(a2, b);
    EXPECT_EQ(d1.head<3>().norm(), d2.head<3>().norm());
    EXPECT_EQ(d1.tail(6).norm(), d2.tail(6).norm());
  }
}

TEST(ConfigDiff, LayoutMismatchThrows) {
  EXPECT_THROW(grasp_config_diff(Eigen::VectorXd::Zero(13), Eigen::VectorXd::Zero(12)),
               ArgumentError);
  EXPECT_THROW(grasp_config_diff(Eigen::VectorXd::Zero(5), Eigen::VectorXd::Zero(5)),
               ArgumentError);
}

struct GripperScene {
  physics::WorldState world;
  GripperConfig gripper;
  int object_geom = -1;

  GripperScene() {
    physics::RigidBodyState ball;
    ball.position = Vec3(0, 0, 0.03);
    const int body = world.add_body(ball);
    physics::GeomSpec g;
    g.shape = physics::Sphere{0.03};
    g.parent_body = body;
    object_geom = world.add_geom(g);
    gripper = build_gripper(world, {},
                            make_config({Vec3(0, 0, 0.11), Quat::Identity()},
                                        Eigen::VectorXd::Zero(6)),
                            {});
  }

  ContactPoint touch(int geom, double force) const {
    ContactPoint c;
    c.geom_a = object_geom;
    c.geom_b = geom;
    c.normal_force = force;
    return c;
  }
};

TEST(FingertipContacts, CountsPressingFingertipsOnly) {
  GripperScene s;
  EXPECT_EQ(fingertip_contact_count(s.world, s.gripper, s.object_geom, 0.1), 0);
  for (int tip : s.gripper.fingertip_geom_ids) s.world.contacts.push_back(s.touch(tip, 1.0));
  EXPECT_EQ(fingertip_contact_count(s.world, s.gripper, s.object_geom, 0.1), 3);
  // repeated contacts on one fingertip count once
  s.world.contacts.push_back(s.touch(s.gripper.fingertip_geom_ids[0], 2.0));
  EXPECT_EQ(fingertip_contact_count(s.world, s.gripper, s.object_geom, 0.1), 3);

  s.world.contacts = {s.touch(s.gripper.palm_geom, 5.0), s.touch(s.gripper.link_geoms[0], 5.0)};
  EXPECT_EQ(fingertip_contact_count(s.world, s.gripper, s.object_geom, 0.1), 0);

  s.world.contacts = {s.touch(s.gripper.fingertip_geom_ids[1], 0.05)};
  EXPECT_EQ(fingertip_contact_count(s.world, s.gripper, s.object_geom, 0.1), 0);
}

TEST(ComputeReward, MatchesTermsFromState) {
  GripperScene s;
  GraspTarget target;
  target.object_body = s.world.geoms[s.object_geom].parent_body;
  target.object_geom = s.object_geom;
  target.object_pose = s.world.bodies[target.object_body].pose();
  target.config = make_config({Vec3(0, 0, 0.11), Quat::Identity()}, Eigen::VectorXd::Zero(6));
  for (int f = 0; f < 2; ++f) {
    s.world.contacts.push_back(s.touch(s.gripper.fingertip_geom_ids[f], 1.0));
  }
  auto& ball = s.world.bodies[target.object_body];
  ball.position += Vec3(0.0, 0.003, 0.004);
  ball.orientation = Quat(Eigen::AngleAxisd(0.05, Vec3::UnitY()));
  Eigen::VectorXd joints = Eigen::VectorXd::Zero(6);
  joints[0] = 0.3;
  joints[5] = -0.4;
  const Eigen::VectorXd config = make_config({Vec3(0.006, -0.008, 0.11), Quat::Identity()}, joints);

  const RewardConfig cfg;
  const RewardBreakdown r = compute_reward(s.world, s.gripper, target, config, cfg);
  EXPECT_NEAR(r.q_fingertip, 4.0, 1e-15);
  EXPECT_NEAR(r.z_hand, 10 * 0.01, 1e-12);
  EXPECT_NEAR(r.z_fjoint, 0.5, 1e-12);
  EXPECT_NEAR(r.d_diff, 10 * 0.005, 1e-12);
  EXPECT_NEAR(r.o_diff, 50 * 0.05, 1e-12);
  EXPECT_NEAR(r.total, 4.0 - 0.1 - 0.5 - 0.05 - 2.5, 1e-12);
}

}  // namespace
}  // namespace tacgrasp::grasp
