#pragma once

#include <string>

#include "tacgrasp/physics/math.hpp"

namespace tacgrasp::physics {

// Body-frame inertia tensor together with an elementwise scale applied before
// it enters the dynamics. The scale exists to absorb sim-to-real discrepancies.
struct InertiaSpec {
  Mat3 tensor = Mat3::Identity();
  Mat3 alpha = Mat3::Ones();

  static InertiaSpec diagonal(const Vec3& moments) {
    InertiaSpec spec;
    spec.tensor = moments.asDiagonal();
    return spec;
  }
};

// Returns alpha ∘ tensor (Hadamard product). Throws ModelError if the inputs
// are not symmetric or the scaled tensor is not positive definite.
Mat3 scaled_inertia(const InertiaSpec& spec);

// Static bodies never move. Kinematic bodies move with externally prescribed
// velocities and behave as infinitely massive in contacts.
enum class BodyKind { kDynamic, kStatic, kKinematic };

struct RigidBodyState {
  std::string name;
  Vec3 position = Vec3::Zero();  // centre of mass, world frame
  Quat orientation = Quat::Identity();
  Vec3 linear_velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();  // world frame
  double mass = 1.0;
  InertiaSpec inertia;
  BodyKind kind = BodyKind::kDynamic;

  bool is_static() const { return kind == BodyKind::kStatic; }
  bool is_dynamic() const { return kind == BodyKind::kDynamic; }
  Pose pose() const { return {position, orientation}; }
};

void validate_body(const RigidBodyState& body);

// Solid-body inertia about the centre for common primitives.
Vec3 solid_sphere_inertia(double mass, double radius);
Vec3 solid_box_inertia(double mass, const Vec3& half_extents);
Vec3 solid_cylinder_inertia(double mass, double radius, double half_length);
Vec3 solid_ellipsoid_inertia(double mass, const Vec3& radii);
Vec3 solid_capsule_inertia(double mass, double radius, double half_length);

}  // namespace tacgrasp::physics
