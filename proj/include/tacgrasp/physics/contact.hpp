#pragma once

#include "tacgrasp/physics/math.hpp"

namespace tacgrasp::physics {

// Virtual spring-damper of a soft constraint. `k` and `b` act at the
// acceleration level; `d` blends the unconstrained acceleration with the
// reference acceleration -b*v - k*r.
struct ImpedanceParams {
  double k = 1000.0;
  double b = 30.0;
  double d = 0.9;
};

void validate_impedance(const ImpedanceParams& p);

// Solves a1 + d*(b*v + k*r) = (1 - d)*a0 for a1.
double constraint_acceleration(const ImpedanceParams& p, double v, double r,
                               double a0);

// Below this tangential speed a contact is treated as sticking.
inline constexpr double kStaticVelocityThreshold = 1e-4;

// Coulomb sliding friction. In the sliding regime returns -mu1*f_n*v_t/|v_t|.
// In the static regime returns -residual clamped to magnitude mu1*f_n, where
// `residual` is the tangential force that would otherwise act at the contact.
Vec3 friction_force(double mu1, double f_n, const Vec3& v_t,
                    const Vec3& residual = Vec3::Zero(),
                    double v_eps = kStaticVelocityThreshold);

struct ContactPoint {
  int geom_a = -1;
  int geom_b = -1;
  Vec3 position = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();  // unit, points from geom_b into geom_a
  double penetration = 0.0;
  // Filled by the dynamics step; zero straight out of detection.
  double normal_force = 0.0;
  Vec3 friction = Vec3::Zero();  // tangential force acting on geom_a
  Vec3 tangential_velocity = Vec3::Zero();  // of a relative to b, pre-solve
  bool sliding = false;

  bool involves(int geom) const { return geom_a == geom || geom_b == geom; }
  int other(int geom) const { return geom_a == geom ? geom_b : geom_a; }
};

}  // namespace tacgrasp::physics
