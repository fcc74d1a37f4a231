#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "tacgrasp/physics/math.hpp"

namespace tacgrasp::physics {

// Primitive shapes. Capsule and cylinder axes run along the local z axis; a
// plane passes through the local origin with normal +z.
struct Sphere {
  double radius = 0.0;
};
struct Capsule {
  double radius = 0.0;
  double half_length = 0.0;  // of the inner segment, excluding the caps
};
struct Ellipsoid {
  Vec3 radii = Vec3::Zero();
};
struct Box {
  Vec3 half_extents = Vec3::Zero();
};
struct Cylinder {
  double radius = 0.0;
  double half_length = 0.0;
};
struct Plane {};

using Shape = std::variant<Sphere, Capsule, Ellipsoid, Box, Cylinder, Plane>;

std::string shape_name(const Shape& shape);
double shape_volume(const Shape& shape);
// Radius of a sphere about the local origin that contains the shape;
// infinity for planes.
double bounding_radius(const Shape& shape);

struct GeomSpec {
  std::string name;
  Shape shape = Sphere{0.01};
  std::uint32_t contype = 1;
  std::uint32_t conaffinity = 1;
  double mu1 = 0.5;  // sliding friction coefficient
  int parent_body = 0;
  Pose local_pose;
};

void validate_geom(const GeomSpec& geom);

// Contact filter: a pair may collide when either geom's contype overlaps the
// other's conaffinity.
bool collision_enabled(const GeomSpec& a, const GeomSpec& b);

}  // namespace tacgrasp::physics
