#include <gtest/gtest.h>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/physics/scene_io.hpp"
#include "tacgrasp/tactile/tactile_io.hpp"

namespace tacgrasp {
namespace {

using nlohmann::json;

const char* kScene = R"({
  "dt": 0.001,
  "gravity": [0, 0, -9.81],
  "impedance": {"k": 800, "b": 25, "d": 0.85},
  "bodies": [
    {"name": "ground", "kind": "static"},
    {"name": "pad_body", "kind": "kinematic", "position": [0, 0, 0.2]},
    {"name": "ball", "position": [0, 0, 0.05], "mass": 0.1, "inertia": [1e-5, 1e-5, 1e-5]}
  ],
  "geoms": [
    {"name": "floor", "body": "ground", "shape": {"type": "plane"}, "mu1": 0.7},
    {"name": "pad", "body": "pad_body", "shape": {"type": "box", "half_extents": [0.01, 0.01, 0.002]},
     "contype": 2, "conaffinity": 2},
    {"name": "ball_geom", "body": 2, "shape": {"type": "sphere", "radius": 0.03}, "contype": 3, "conaffinity": 3}
  ],
  "pair_impedance": [{"geoms": ["floor", "ball_geom"], "k": 2000}],
  "tactile": {"stride": 2, "arrays": [{"pad": "pad", "rows": 4, "cols": 6, "pitch": 0.003}]}
})";

TEST(SceneIo, LoadsDocumentedSchema) {
  const tactile::Scene scene = tactile::scene_from_json(json::parse(kScene));
  const auto& w = scene.world;
  EXPECT_EQ(w.dt, 0.001);
  EXPECT_EQ(w.bodies.size(), 3u);
  EXPECT_EQ(w.geoms[2].parent_body, 2);
  EXPECT_EQ(w.geoms[1].contype, 2u);
  EXPECT_EQ(w.impedance_for(0, 2).k, 2000);
  EXPECT_EQ(w.impedance_for(2, 0).d, 0.85);
  EXPECT_EQ(w.impedance_for(1, 2).k, 800);
  ASSERT_EQ(scene.arrays.size(), 1u);
  EXPECT_EQ(scene.arrays[0].taxels.size(), 24u);
  EXPECT_EQ(scene.arrays[0].pad_geom, 1);
}

TEST(SceneIo, RoundTripPreservesWorld) {
  const tactile::Scene scene = tactile::scene_from_json(json::parse(kScene));
  const tactile::Scene again = tactile::scene_from_json(tactile::scene_to_json(scene));
  EXPECT_EQ(tactile::scene_to_json(again), tactile::scene_to_json(scene));
}

TEST(SceneIo, BadShapeNamesField) {
  json doc = json::parse(kScene);
  doc["geoms"][0]["shape"]["type"] = "torus";
  try {
    physics::world_from_json(doc);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "geoms[0].shape.type");
  }
}

TEST(SceneIo, InvalidModelRejected) {
  json doc = json::parse(kScene);
  doc["geoms"][2]["mu1"] = -1.0;
  EXPECT_THROW(physics::world_from_json(doc), ConfigError);
  doc = json::parse(kScene);
  doc["impedance"]["d"] = 1.5;
  EXPECT_THROW(physics::world_from_json(doc), ConfigError);
}

}  // namespace
}  // namespace tacgrasp
