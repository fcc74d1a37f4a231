#pragma once

// Four test objects with the mass and volume of a 3 cm radius reference
// sphere, each resting on the ground plane at its nominal pose.

#include <array>
#include <string>
#include <string_view>

#include "tacgrasp/physics/geometry.hpp"
#include "tacgrasp/physics/math.hpp"

namespace tacgrasp::grasp {

enum class ShapeKind { kColumn, kCapsule, kEllipsoid, kSphere };

inline constexpr std::array<ShapeKind, 4> kCatalogShapes = {
    ShapeKind::kColumn, ShapeKind::kCapsule, ShapeKind::kEllipsoid, ShapeKind::kSphere};

inline constexpr double kReferenceMass = 0.1;          // kg
inline constexpr double kReferenceRadius = 0.03;       // m
double reference_volume();                             // m^3

struct ObjectSpec {
  ShapeKind shape = ShapeKind::kSphere;
  double mass = kReferenceMass;
  physics::Shape dimensions = physics::Sphere{kReferenceRadius};
  Pose target_pose;  // resting pose with the object centred on the origin
  double mu1 = 0.8;
};

std::string_view shape_name(ShapeKind shape);
// Throws ConfigError for names outside the catalog.
ShapeKind shape_from_name(std::string_view name);

ObjectSpec catalog_object(ShapeKind shape);

// Height of the object's top surface above the plane at the target pose.
double object_height(const ObjectSpec& object);

}  // namespace tacgrasp::grasp
