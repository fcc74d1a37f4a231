#pragma once

// JSON scene description. Schema (all lengths in metres, SI units):
//
//   {
//     "dt": 0.002, "gravity": [0, 0, -9.81], "solver_iterations": 20,
//     "impedance": {"k": 1000, "b": 30, "d": 0.9},
//     "bodies": [{"name": "ball", "kind": "dynamic|static|kinematic",
//                 "position": [x, y, z], "orientation": [w, x, y, z],
//                 "linear_velocity": [..], "angular_velocity": [..],
//                 "mass": 0.1, "inertia": [[..],[..],[..]] | [ixx, iyy, izz],
//                 "alpha": [[..],[..],[..]] | scalar}],
//     "geoms": [{"name": "ball_geom", "body": "ball" | index,
//                "shape": {"type": "sphere", "radius": 0.03},
//                "contype": 1, "conaffinity": 1, "mu1": 0.5,
//                "position": [..], "orientation": [w, x, y, z]}],
//     "pair_impedance": [{"geoms": ["a", "b"], "k": .., "b": .., "d": ..}]
//   }
//
// Shape types and fields: sphere{radius}, capsule{radius, half_length},
// ellipsoid{radii: [a, b, c]}, box{half_extents: [x, y, z]},
// cylinder{radius, half_length}, plane{}. Omitted fields take the defaults of
// the corresponding C++ structs.

#include <string>

#include "json.hpp"
#include "tacgrasp/physics/world.hpp"

namespace tacgrasp::physics {

// Throws ConfigError naming the offending field, then validates the model.
WorldState world_from_json(const nlohmann::json& doc);
nlohmann::json world_to_json(const WorldState& world);

int find_geom(const WorldState& world, const std::string& name);
int find_body(const WorldState& world, const std::string& name);

}  // namespace tacgrasp::physics
