#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tacgrasp/physics/body.hpp"
#include "tacgrasp/physics/contact.hpp"
#include "tacgrasp/physics/geometry.hpp"

namespace tacgrasp::physics {

struct WorldState {
  std::vector<RigidBodyState> bodies;
  std::vector<GeomSpec> geoms;
  ImpedanceParams impedance;
  // Keyed by (min geom id, max geom id).
  std::map<std::pair<int, int>, ImpedanceParams> pair_impedance;
  Vec3 gravity{0.0, 0.0, -9.81};
  double time = 0.0;
  double dt = 0.002;
  int solver_iterations = 20;
  // Contacts resolved by the most recent step, with forces filled in.
  std::vector<ContactPoint> contacts;

  int add_body(RigidBodyState body);
  int add_geom(GeomSpec geom);
  Pose geom_pose(int geom) const;
  const ImpedanceParams& impedance_for(int geom_a, int geom_b) const;
  void set_pair_impedance(int geom_a, int geom_b, const ImpedanceParams& p);
};

// Throws ModelError on the first invalid body, geom or parameter.
void validate_world(const WorldState& world);

// Narrow phase over all filtered geom pairs at the current poses. Penetrating
// pairs yield at least one contact; flat faces against a plane yield one per
// penetrating corner or rim sample. Throws UnsupportedPairError for shape
// pairs with no narrow-phase routine.
std::vector<ContactPoint> detect_contacts(const WorldState& world);

// Semi-implicit Euler advance by world.dt with soft contact constraints and
// Coulomb friction. Throws SimulationDiverged on non-finite state.
void advance(WorldState& world);

inline WorldState step(WorldState world) {
  advance(world);
  return world;
}

// Kinetic plus gravitational potential energy of the dynamic bodies.
double mechanical_energy(const WorldState& world);

}  // namespace tacgrasp::physics
