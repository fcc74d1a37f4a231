#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "../../src/physics/narrowphase.hpp"
#include "tacgrasp/errors.hpp"
#include "tacgrasp/physics/world.hpp"

namespace tacgrasp::physics {
namespace {

using std::numbers::pi;

int add_geom(WorldState& w, const Shape& shape, const Vec3& pos,
             const Quat& rot = Quat::Identity(), BodyKind kind = BodyKind::kDynamic) {
  RigidBodyState b;
  b.position = pos;
  b.orientation = rot;
  b.kind = kind;
  const int id = w.add_body(b);
  GeomSpec g;
  g.shape = shape;
  g.parent_body = id;
  return w.add_geom(g);
}

TEST(Detect, OverlappingSpheres) {
  WorldState w;
  add_geom(w, Sphere{1.0}, Vec3(0, 0, 0));
  add_geom(w, Sphere{1.0}, Vec3(0, 0, 1.5));
  const auto contacts = detect_contacts(w);
  ASSERT_EQ(contacts.size(), 1u);
  EXPECT_NEAR(contacts[0].penetration, 0.5, 1e-15);
  EXPECT_TRUE(contacts[0].normal.isApprox(Vec3(0, 0, 1)));
  // normal points from geom_b into geom_a
  const Vec3 a = w.geom_pose(contacts[0].geom_a).position;
  const Vec3 b = w.geom_pose(contacts[0].geom_b).position;
  EXPECT_GT(contacts[0].normal.dot(a - b), 0.0);
}

TEST(Detect, SeparatedSpheres) {
  WorldState w;
  add_geom(w, Sphere{1.0}, Vec3(0, 0, 0));
  add_geom(w, Sphere{1.0}, Vec3(3, 0, 0));
  EXPECT_TRUE(detect_contacts(w).empty());
}

TEST(Detect, SphereOnPlane) {
  WorldState w;
  add_geom(w, Sphere{1.0}, Vec3(0, 0, 0.8));
  add_geom(w, Plane{}, Vec3::Zero(), Quat::Identity(), BodyKind::kStatic);
  const auto contacts = detect_contacts(w);
  ASSERT_EQ(contacts.size(), 1u);
  EXPECT_NEAR(contacts[0].penetration, 0.2, 1e-15);
  EXPECT_TRUE(contacts[0].normal.isApprox(Vec3(0, 0, 1)));
  EXPECT_EQ(contacts[0].geom_b, 1);
}

TEST(Detect, TiltedCapsuleOnPlane) {
  WorldState w;
  const Quat tilt(Eigen::AngleAxisd(0.3, Vec3::UnitY()));
  add_geom(w, Capsule{0.1, 0.5}, Vec3(0, 0, 0.2), tilt);
  add_geom(w, Plane{}, Vec3::Zero(), Quat::Identity(), BodyKind::kStatic);
  const auto contacts = detect_contacts(w);
  ASSERT_EQ(contacts.size(), 1u);
  // lower end sits 0.5*cos(0.3) below the centre
  EXPECT_NEAR(contacts[0].penetration, 0.1 + 0.5 * std::cos(0.3) - 0.2, 1e-14);
}

TEST(Detect, CapsuleAgainstSphere) {
  WorldState w;
  add_geom(w, Capsule{0.1, 0.5}, Vec3::Zero(), Quat(Eigen::AngleAxisd(pi / 2, Vec3::UnitY())));
  add_geom(w, Sphere{0.2}, Vec3(0.3, 0.0, 0.25));
  const auto contacts = detect_contacts(w);
  ASSERT_EQ(contacts.size(), 1u);
  EXPECT_NEAR(contacts[0].penetration, 0.05, 1e-14);
  EXPECT_TRUE(contacts[0].normal.isApprox(Vec3(0, 0, 1)));
  EXPECT_EQ(contacts[0].geom_a, 1);  // later-listed geom receives the normal
}

TEST(Detect, FilteredPairsProduceNothing) {
  WorldState w;
  const int a = add_geom(w, Sphere{1.0}, Vec3::Zero());
  const int b = add_geom(w, Sphere{1.0}, Vec3(0, 0, 1));
  w.geoms[a].contype = 2;
  w.geoms[a].conaffinity = 4;
  w.geoms[b].contype = 8;
  w.geoms[b].conaffinity = 16;
  EXPECT_TRUE(detect_contacts(w).empty());
}

TEST(Detect, UnsupportedPairFailsLoudly) {
  WorldState w;
  add_geom(w, Box{Vec3(1, 1, 1)}, Vec3::Zero());
  add_geom(w, Ellipsoid{Vec3(1, 2, 1)}, Vec3(0, 0, 1));
  EXPECT_THROW(detect_contacts(w), UnsupportedPairError);
}

TEST(Detect, BoxRestingOnPlaneYieldsFourCorners) {
  WorldState w;
  add_geom(w, Box{Vec3(0.1, 0.2, 0.05)}, Vec3(0, 0, 0.049));
  add_geom(w, Plane{}, Vec3::Zero(), Quat::Identity(), BodyKind::kStatic);
  const auto contacts = detect_contacts(w);
  ASSERT_EQ(contacts.size(), 4u);
  for (const auto& c : contacts) EXPECT_NEAR(c.penetration, 0.001, 1e-15);
}

// Brute-force oracle: dense surface sampling refined by repeated zooming.
double ellipsoid_distance_oracle(const Vec3& radii, const Vec3& p) {
  double best = INFINITY, best_u = 0, best_v = 0;
  double span_u = pi, span_v = pi / 2;
  double centre_u = 0, centre_v = 0;
  for (int level = 0; level < 12; ++level) {
    constexpr int n = 64;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const double u = centre_u + span_u * (2.0 * i / n - 1.0);
        const double v = std::clamp(centre_v + span_v * (2.0 * j / n - 1.0), -pi / 2, pi / 2);
        const Vec3 s(radii.x() * std::cos(v) * std::cos(u), radii.y() * std::cos(v) * std::sin(u),
                     radii.z() * std::sin(v));
        const double d = (s - p).norm();
        if (d < best) {
          best = d;
          best_u = u;
          best_v = v;
        }
      }
    }
    centre_u = best_u;
    centre_v = best_v;
    span_u *= 0.15;
    span_v *= 0.15;
  }
  const double level = p.cwiseQuotient(radii).squaredNorm();
  return level >= 1.0 ? best : -best;
}

TEST(Distance, EllipsoidMatchesBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.08, 0.08);
  const Ellipsoid ell{Vec3(0.04, 0.03, 0.0225)};
  for (int i = 0; i < 40; ++i) {
    const Vec3 p(u(rng), u(rng), u(rng));
    const double expected = ellipsoid_distance_oracle(ell.radii, p);
    EXPECT_NEAR(detail::ellipsoid_distance(ell, p).distance, expected, 1e-6) << p.transpose();
  }
}

TEST(Distance, EllipsoidInteriorPoint) {
  const Ellipsoid ell{Vec3(0.04, 0.03, 0.0225)};
  const Vec3 p(0.01, 0.005, 0.002);
  EXPECT_NEAR(detail::ellipsoid_distance(ell, p).distance, ellipsoid_distance_oracle(ell.radii, p),
              1e-6);
}

TEST(Distance, BoxAndCylinderAgainstSampling) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  const Box box{Vec3(0.05, 0.03, 0.02)};
  const Cylinder cyl{0.025, 0.03};
  for (int i = 0; i < 200; ++i) {
    const Vec3 p(u(rng), u(rng), u(rng));
    // outside: distance to the clamped point; inside: nearest face
    const Vec3 q = p.cwiseAbs() - box.half_extents;
    const double box_expected =
        q.cwiseMax(0.0).norm() + std::min(q.maxCoeff(), 0.0);
    EXPECT_NEAR(detail::box_distance(box, p).distance, box_expected, 1e-12);
    const double dr = std::hypot(p.x(), p.y()) - cyl.radius;
    const double dz = std::abs(p.z()) - cyl.half_length;
    const double cyl_expected =
        std::hypot(std::max(dr, 0.0), std::max(dz, 0.0)) + std::min(std::max(dr, dz), 0.0);
    EXPECT_NEAR(detail::cylinder_distance(cyl, p).distance, cyl_expected, 1e-12);
  }
}

TEST(Detect, CapsuleAgainstEllipsoidWithinTolerance) {
  // horizontal capsule skimming the top of a resting ellipsoid
  WorldState w;
  add_geom(w, Ellipsoid{Vec3(0.04, 0.03, 0.0225)}, Vec3::Zero());
  add_geom(w, Capsule{0.008, 0.02}, Vec3(0.01, 0.0, 0.0225 + 0.006),
           Quat(Eigen::AngleAxisd(pi / 2, Vec3::UnitX())), BodyKind::kKinematic);
  const auto contacts = detect_contacts(w);
  ASSERT_EQ(contacts.size(), 1u);
  // oracle: minimise over capsule axis samples of the brute-force distance
  double best = INFINITY;
  for (int i = 0; i <= 400; ++i) {
    const double y = -0.02 + 0.04 * i / 400.0;
    best = std::min(best, ellipsoid_distance_oracle(Vec3(0.04, 0.03, 0.0225),
                                                    Vec3(0.01, y, 0.0285)));
  }
  EXPECT_NEAR(contacts[0].penetration, 0.008 - best, 1e-6);
}

TEST(Detect, SegmentClosestPointsParallel) {
  const auto cp = detail::closest_points_segments(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, 1, 0),
                                                  Vec3(2, 1, 0));
  EXPECT_NEAR((cp.on_first - cp.on_second).norm(), 1.0, 1e-12);
}

}  // namespace
}  // namespace tacgrasp::physics
