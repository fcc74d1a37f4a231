#include "tacgrasp/grasp/catalog.hpp"

#include <cmath>
#include <numbers>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::grasp {

double reference_volume() {
  return 4.0 / 3.0 * std::numbers::pi * std::pow(kReferenceRadius, 3);
}

std::string_view shape_name(ShapeKind shape) {
  switch (shape) {
    case ShapeKind::kColumn: return "column";
    case ShapeKind::kCapsule: return "capsule";
    case ShapeKind::kEllipsoid: return "ellipsoid";
    case ShapeKind::kSphere: return "sphere";
  }
  return "unknown";
}

ShapeKind shape_from_name(std::string_view name) {
  for (ShapeKind s : kCatalogShapes) {
    if (shape_name(s) == name) return s;
  }
  throw ConfigError("unknown shape '" + std::string(name) +
                        "' (expected column, capsule, ellipsoid or sphere)",
                    "shape");
}

ObjectSpec catalog_object(ShapeKind shape) {
  const double r0 = kReferenceRadius;
  ObjectSpec spec;
  spec.shape = shape;
  switch (shape) {
    case ShapeKind::kSphere:
      spec.dimensions = physics::Sphere{r0};
      spec.target_pose.position = Vec3(0, 0, r0);
      break;
    case ShapeKind::kColumn: {
      // upright cylinder: pi r^2 (2h) = 4/3 pi r0^3
      const double r = 0.025;
      const double h = 2.0 / 3.0 * r0 * r0 * r0 / (r * r);
      spec.dimensions = physics::Cylinder{r, h};
      spec.target_pose.position = Vec3(0, 0, h);
      break;
    }
    case ShapeKind::kCapsule: {
      // lying along x: pi r^2 (2h) + 4/3 pi r^3 = 4/3 pi r0^3
      const double r = 0.022;
      const double h = 2.0 / 3.0 * (r0 * r0 * r0 - r * r * r) / (r * r);
      spec.dimensions = physics::Capsule{r, h};
      spec.target_pose.position = Vec3(0, 0, r);
      spec.target_pose.orientation = Quat(Eigen::AngleAxisd(std::numbers::pi / 2, Vec3::UnitY()));
      break;
    }
    case ShapeKind::kEllipsoid: {
      // abc = r0^3 with the short axis vertical
      const double a = 0.04, b = 0.03;
      const double c = r0 * r0 * r0 / (a * b);
      spec.dimensions = physics::Ellipsoid{Vec3(a, b, c)};
      spec.target_pose.position = Vec3(0, 0, c);
      break;
    }
  }
  return spec;
}

double object_height(const ObjectSpec& object) {
  return 2.0 * object.target_pose.position.z();
}

}  // namespace tacgrasp::grasp
