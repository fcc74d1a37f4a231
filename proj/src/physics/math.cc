#include "tacgrasp/physics/math.hpp"

#include <cmath>

namespace tacgrasp {

Quat quat_from_rotation_vector(const Vec3& rotvec) {
  const double angle = rotvec.norm();
  if (angle < 1e-12) {
    // second-order accurate for tiny rotations
    Quat q(1.0, 0.5 * rotvec.x(), 0.5 * rotvec.y(), 0.5 * rotvec.z());
    return q.normalized();
  }
  return Quat(Eigen::AngleAxisd(angle, rotvec / angle));
}

Vec3 rotation_vector(const Quat& q_in) {
  Quat q = q_in.normalized();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const double s = q.vec().norm();
  if (s < 1e-12) return 2.0 * q.vec();
  const double angle = 2.0 * std::atan2(s, q.w());
  return q.vec() * (angle / s);
}

double geodesic_angle(const Quat& a, const Quat& b) {
  const Quat rel = a.normalized().conjugate() * b.normalized();
  return 2.0 * std::atan2(rel.vec().norm(), std::abs(rel.w()));
}

Quat normalized(const Quat& q) {
  const double n = q.norm();
  if (n < 1e-300) return Quat::Identity();
  return Quat(q.coeffs() / n);
}

bool all_finite(const Vec3& v) { return v.allFinite(); }
bool all_finite(const Quat& q) { return q.coeffs().allFinite(); }

}  // namespace tacgrasp
