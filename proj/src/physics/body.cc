#include "tacgrasp/physics/body.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::physics {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

bool symmetric(const Mat3& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance;
}

}  // namespace

Mat3 scaled_inertia(const InertiaSpec& spec) {
  if (!spec.tensor.allFinite() || !spec.alpha.allFinite()) {
    throw ModelError("inertia: non-finite entries");
  }
  if (!symmetric(spec.tensor)) throw ModelError("inertia: tensor not symmetric");
  if (!symmetric(spec.alpha)) throw ModelError("inertia: alpha not symmetric");
  if ((spec.alpha.array() <= 0.0).any()) {
    throw ModelError("inertia: alpha entries must be positive");
  }
  if ((spec.tensor.diagonal().array() <= 0.0).any()) {
    throw ModelError("inertia: diagonal entries must be positive");
  }
  const Mat3 scaled = spec.alpha.cwiseProduct(spec.tensor);
  Eigen::LLT<Mat3> llt(scaled);
  if (llt.info() != Eigen::Success) {
    throw ModelError("inertia: scaled tensor is not positive definite");
  }
  return scaled;
}

void validate_body(const RigidBodyState& body) {
  if (!all_finite(body.position) || !all_finite(body.orientation) ||
      !all_finite(body.linear_velocity) || !all_finite(body.angular_velocity)) {
    throw ModelError("body '" + body.name + "': non-finite state");
  }
  if (std::abs(body.orientation.norm() - 1.0) > 1e-9) {
    throw ModelError("body '" + body.name + "': orientation is not unit length");
  }
  if (body.is_dynamic()) {
    if (!(body.mass > 0.0)) {
      throw ModelError("body '" + body.name + "': mass must be positive");
    }
    scaled_inertia(body.inertia);
  }
}

Vec3 solid_sphere_inertia(double mass, double radius) {
  return Vec3::Constant(0.4 * mass * radius * radius);
}

Vec3 solid_box_inertia(double mass, const Vec3& h) {
  const Vec3 s = 2.0 * h;
  return mass / 12.0 *
         Vec3(s.y() * s.y() + s.z() * s.z(), s.x() * s.x() + s.z() * s.z(),
              s.x() * s.x() + s.y() * s.y());
}

Vec3 solid_cylinder_inertia(double mass, double radius, double half_length) {
  const double len = 2.0 * half_length;
  const double side = mass * (3.0 * radius * radius + len * len) / 12.0;
  return {side, side, 0.5 * mass * radius * radius};
}

Vec3 solid_ellipsoid_inertia(double mass, const Vec3& r) {
  return mass / 5.0 *
         Vec3(r.y() * r.y() + r.z() * r.z(), r.x() * r.x() + r.z() * r.z(),
              r.x() * r.x() + r.y() * r.y());
}

Vec3 solid_capsule_inertia(double mass, double radius, double half_length) {
  using std::numbers::pi;
  const double r2 = radius * radius;
  const double len = 2.0 * half_length;
  const double v_cyl = pi * r2 * len;
  const double v_caps = 4.0 / 3.0 * pi * r2 * radius;
  const double m_cyl = mass * v_cyl / (v_cyl + v_caps);
  const double m_caps = mass - m_cyl;
  const double axial = 0.5 * m_cyl * r2 + 0.4 * m_caps * r2;
  // hemispheres: own inertia plus parallel-axis shift of their centroids
  const double side = m_cyl * (3.0 * r2 + len * len) / 12.0 +
                      m_caps * (0.4 * r2 + 0.25 * len * len + 0.375 * radius * len);
  return {side, side, axial};
}

}  // namespace tacgrasp::physics
