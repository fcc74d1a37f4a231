#pragma once

// Small geometry helpers shared by the simulation and task code.

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace tacgrasp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;
using Vec6 = Eigen::Matrix<double, 6, 1>;

struct Pose {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();

  Vec3 transform(const Vec3& local) const {
    return position + orientation * local;
  }
  Vec3 inverse_transform(const Vec3& world) const {
    return orientation.conjugate() * (world - position);
  }
  Pose operator*(const Pose& child) const {
    return {transform(child.position), orientation * child.orientation};
  }
};

// Exponential / logarithmic maps between unit quaternions and rotation vectors.
Quat quat_from_rotation_vector(const Vec3& rotvec);
Vec3 rotation_vector(const Quat& q);

// Angle of the relative rotation a^-1 * b, in [0, pi].
double geodesic_angle(const Quat& a, const Quat& b);

Quat normalized(const Quat& q);

bool all_finite(const Vec3& v);
bool all_finite(const Quat& q);

}  // namespace tacgrasp
