#include <random>

#include <gtest/gtest.h>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/tactile/taxel_array.hpp"

namespace tacgrasp::tactile {
namespace {

using physics::ContactPoint;
using physics::WorldState;

struct PadFixture {
  WorldState world;
  int pad = -1;

  PadFixture() {
    physics::RigidBodyState body;
    body.kind = physics::BodyKind::kKinematic;
    body.position = Vec3(0.1, -0.2, 0.3);
    body.orientation = Quat(Eigen::AngleAxisd(0.7, Vec3(1, 1, 0).normalized()));
    world.add_body(body);
    physics::GeomSpec g;
    g.shape = physics::Box{Vec3(0.01, 0.01, 0.002)};
    pad = world.add_geom(g);
  }

  ContactPoint load_at(const TaxelArray& array, const Vec3& pad_point, double force) const {
    ContactPoint c;
    c.geom_a = pad;
    c.geom_b = 99;
    c.position = (world.geom_pose(pad) * array.frame).transform(pad_point);
    c.normal_force = force;
    return c;
  }
};

void hold(TaxelArray& array, const PadFixture& f, const std::vector<ContactPoint>& contacts,
          double seconds, double dt = 0.002) {
  const int steps = static_cast<int>(std::lround(seconds / dt));
  for (int i = 0; i < steps; ++i) update_taxels(array, f.world, contacts, dt);
}

TEST(Taxels, NoContactsReadZero) {
  PadFixture f;
  TaxelArray array = TaxelArray::grid({}, f.pad);
  hold(array, f, {}, 0.1);
  EXPECT_EQ(array.readings().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Taxels, DisplacementDecaysAfterRelease) {
  PadFixture f;
  TaxelArray array = TaxelArray::grid({}, f.pad);
  const Vec3 p = array.at(3, 3).spec.local_position;
  hold(array, f, {f.load_at(array, p, 2.0)}, 0.2);
  const double loaded = array.at(3, 3).state.displacement;
  EXPECT_GT(loaded, 0.0);
  hold(array, f, {}, 0.2);
  EXPECT_LT(array.at(3, 3).state.displacement, 1e-3 * loaded);
}

TEST(Taxels, StaticPointLoadMatchesSpringBalance) {
  PadFixture f;
  TaxelLayout layout;
  layout.k = 500.0;
  TaxelArray array = TaxelArray::grid(layout, f.pad);
  const Vec3 p = array.at(2, 5).spec.local_position;
  hold(array, f, {f.load_at(array, p, 5.0)}, 0.5);
  EXPECT_NEAR(array.at(2, 5).state.displacement, 0.01, 0.02 * 0.01);
  EXPECT_NEAR(array.at(2, 5).state.force_reading, 5.0, 0.02 * 5.0);
  EXPECT_LT(array.at(2, 4).state.force_reading, 1e-4);
}

TEST(Taxels, MidpointLoadSplitsEvenly) {
  PadFixture f;
  TaxelLayout layout;
  layout.receptive_radius = 0.0015;
  TaxelArray array = TaxelArray::grid(layout, f.pad);
  const Vec3 mid = 0.5 * (array.at(4, 2).spec.local_position + array.at(4, 3).spec.local_position);
  hold(array, f, {f.load_at(array, mid, 5.0)}, 0.5);
  const double left = array.at(4, 2).state.force_reading;
  const double right = array.at(4, 3).state.force_reading;
  EXPECT_NEAR(left, right, 1e-9);
  EXPECT_NEAR(left + right, 5.0, 0.05 * 5.0);
}

TEST(Taxels, SteadyReadingMonotoneInLoad) {
  PadFixture f;
  double previous = -1.0;
  for (double force : {0.2, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    TaxelArray array = TaxelArray::grid({}, f.pad);
    hold(array, f, {f.load_at(array, array.at(1, 1).spec.local_position, force)}, 0.3);
    const double reading = array.at(1, 1).state.force_reading;
    EXPECT_GT(reading, previous);
    previous = reading;
  }
}

TEST(Taxels, DisplacementClampsAtLimit) {
  PadFixture f;
  TaxelLayout layout;
  layout.max_displacement = 0.004;
  TaxelArray array = TaxelArray::grid(layout, f.pad);
  const Vec3 p = array.at(0, 0).spec.local_position;
  for (int i = 0; i < 300; ++i) {
    update_taxels(array, f.world, std::vector{f.load_at(array, p, 50.0)}, 0.002);
    EXPECT_LE(array.at(0, 0).state.displacement, 0.004);
  }
  EXPECT_EQ(array.at(0, 0).state.displacement, 0.004);
  EXPECT_EQ(array.at(0, 0).state.force_reading, 500.0 * 0.004);
}

TEST(Taxels, ReadingsNeverNegative) {
  PadFixture f;
  TaxelArray array = TaxelArray::grid({}, f.pad);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> pos(-0.009, 0.009), force(0.0, 6.0);
  std::bernoulli_distribution on(0.5);
  for (int i = 0; i < 2000; ++i) {
    std::vector<ContactPoint> contacts;
    if (on(rng)) contacts.push_back(f.load_at(array, Vec3(pos(rng), pos(rng), 0), force(rng)));
    update_taxels(array, f.world, contacts, 0.002);
    EXPECT_GE(array.readings().minCoeff(), 0.0);
  }
}

TEST(Taxels, AttributionConservesForce) {
  PadFixture f;
  const TaxelArray array = TaxelArray::grid({}, f.pad);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(-0.008, 0.008), force(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p(pos(rng), pos(rng), 0.0);
    const double fn = force(rng);
    const auto share = attribute_force(array, p, fn);
    double total = 0.0;
    for (double s : share) total += s;
    EXPECT_NEAR(total, fn, 1e-9);
  }
  const auto outside = attribute_force(array, Vec3(0.5, 0.5, 0), 3.0);
  for (double s : outside) EXPECT_EQ(s, 0.0);
}

TEST(Taxels, ContactOnOtherGeomIsConfigError) {
  PadFixture f;
  TaxelArray array = TaxelArray::grid({}, f.pad);
  ContactPoint stray;
  stray.geom_a = 5;
  stray.geom_b = 6;
  stray.normal_force = 1.0;
  EXPECT_THROW(update_taxels(array, f.world, std::vector{stray}, 0.002), ConfigError);
}

TEST(Downsample, Examples) {
  Eigen::MatrixXd g(16, 16);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) g(r, c) = 100 * r + c;
  EXPECT_EQ(downsample(g, 1), g);
  const Eigen::MatrixXd d4 = downsample(g, 4);
  ASSERT_EQ(d4.rows(), 4);
  ASSERT_EQ(d4.cols(), 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(d4(i, j), 100 * 4 * i + 4 * j);
  const Eigen::MatrixXd small = g.topLeftCorner(4, 4);
  const Eigen::MatrixXd one = downsample(small, 4);
  ASSERT_EQ(one.size(), 1);
  EXPECT_EQ(one(0, 0), small(0, 0));
  EXPECT_EQ(downsample(Eigen::MatrixXd::Ones(5, 7), 2).rows(), 3);
  EXPECT_EQ(downsample(Eigen::MatrixXd::Ones(5, 7), 2).cols(), 4);
  EXPECT_THROW(downsample(g, 0), ArgumentError);
}

TEST(Downsample, IdempotentUnderUnitStride) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> dim(1, 20), stride(1, 6);
  for (int i = 0; i < 200; ++i) {
    const Eigen::MatrixXd g = Eigen::MatrixXd::Random(dim(rng), dim(rng));
    const int s = stride(rng);
    EXPECT_EQ(downsample(downsample(g, s), 1), downsample(g, s));
  }
}

TEST(TactileObservation, LayoutAndLength) {
  PadFixture f;
  std::vector<TaxelArray> arrays = {TaxelArray::grid({}, f.pad)};
  EXPECT_EQ(tactile_observation(arrays, 2), Eigen::VectorXd::Zero(16));
  arrays[0].at(0, 0).state.force_reading = 3.0;
  const Eigen::VectorXd obs = tactile_observation(arrays, 2);
  ASSERT_EQ(obs.size(), 16);
  EXPECT_EQ(obs[0], 3.0);
  EXPECT_EQ(obs.tail(15).cwiseAbs().maxCoeff(), 0.0);

  TaxelLayout odd;
  odd.rows = 5;
  odd.cols = 3;
  arrays.push_back(TaxelArray::grid(odd, f.pad));
  arrays[1].at(2, 2).state.force_reading = 7.0;
  const Eigen::VectorXd both = tactile_observation(arrays, 2);
  EXPECT_EQ(both.size(), 16 + 3 * 2);
  EXPECT_EQ(tactile_observation_size(arrays, 2), 22);
  EXPECT_EQ(both[16 + 1 * 2 + 1], 7.0);  // (row 2, col 2) -> reduced (1, 1)
}

}  // namespace
}  // namespace tacgrasp::tactile
