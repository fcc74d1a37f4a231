#include "tacgrasp/physics/contact.hpp"

#include <cmath>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::physics {

void validate_impedance(const ImpedanceParams& p) {
  if (!(p.k >= 0.0) || !(p.b >= 0.0) || !(p.d >= 0.0 && p.d <= 1.0) ||
      !std::isfinite(p.k) || !std::isfinite(p.b)) {
    throw ModelError("impedance: require k >= 0, b >= 0, 0 <= d <= 1");
  }
}

double constraint_acceleration(const ImpedanceParams& p, double v, double r,
                               double a0) {
  return (1.0 - p.d) * a0 - p.d * (p.b * v + p.k * r);
}

Vec3 friction_force(double mu1, double f_n, const Vec3& v_t,
                    const Vec3& residual, double v_eps) {
  const double limit = mu1 * f_n;
  const double speed = v_t.norm();
  if (speed > v_eps) return -limit * v_t / speed;
  const double mag = residual.norm();
  if (mag <= limit) return -residual;
  return -residual * (limit / mag);
}

}  // namespace tacgrasp::physics
