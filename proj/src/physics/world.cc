#include "tacgrasp/physics/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "narrowphase.hpp"
#include "tacgrasp/errors.hpp"

namespace tacgrasp::physics {

int WorldState::add_body(RigidBodyState body) {
  bodies.push_back(std::move(body));
  return static_cast<int>(bodies.size()) - 1;
}

int WorldState::add_geom(GeomSpec geom) {
  geoms.push_back(std::move(geom));
  return static_cast<int>(geoms.size()) - 1;
}

Pose WorldState::geom_pose(int geom) const {
  const GeomSpec& g = geoms[geom];
  return bodies[g.parent_body].pose() * g.local_pose;
}

const ImpedanceParams& WorldState::impedance_for(int geom_a, int geom_b) const {
  if (pair_impedance.empty()) return impedance;
  const auto it = pair_impedance.find({std::min(geom_a, geom_b), std::max(geom_a, geom_b)});
  return it == pair_impedance.end() ? impedance : it->second;
}

void WorldState::set_pair_impedance(int geom_a, int geom_b, const ImpedanceParams& p) {
  pair_impedance[{std::min(geom_a, geom_b), std::max(geom_a, geom_b)}] = p;
}

void validate_world(const WorldState& world) {
  if (!(world.dt > 0.0) || !std::isfinite(world.dt)) throw ModelError("dt must be positive");
  if (world.solver_iterations < 1) throw ModelError("solver_iterations must be >= 1");
  if (!world.gravity.allFinite()) throw ModelError("gravity must be finite");
  validate_impedance(world.impedance);
  for (const auto& [pair, p] : world.pair_impedance) validate_impedance(p);
  for (const auto& body : world.bodies) validate_body(body);
  const int n_bodies = static_cast<int>(world.bodies.size());
  for (const auto& geom : world.geoms) {
    validate_geom(geom);
    if (geom.parent_body < 0 || geom.parent_body >= n_bodies) {
      throw ModelError("geom '" + geom.name + "': parent body out of range");
    }
  }
}

std::vector<ContactPoint> detect_contacts(const WorldState& world) {
  std::vector<ContactPoint> contacts;
  const int n = static_cast<int>(world.geoms.size());
  std::vector<Pose> poses(n);
  std::vector<double> radius(n);
  for (int i = 0; i < n; ++i) {
    poses[i] = world.geom_pose(i);
    radius[i] = bounding_radius(world.geoms[i].shape);
  }
  for (int i = 0; i < n; ++i) {
    const GeomSpec& gi = world.geoms[i];
    for (int j = i + 1; j < n; ++j) {
      const GeomSpec& gj = world.geoms[j];
      if (gi.parent_body == gj.parent_body) continue;
      if (!world.bodies[gi.parent_body].is_dynamic() &&
          !world.bodies[gj.parent_body].is_dynamic()) {
        continue;
      }
      if (!collision_enabled(gi, gj)) continue;
      const bool plane_i = std::holds_alternative<Plane>(gi.shape);
      const bool plane_j = std::holds_alternative<Plane>(gj.shape);
      if (plane_i != plane_j) {
        const int p = plane_i ? i : j;
        const int o = plane_i ? j : i;
        const Vec3 n_plane = poses[p].orientation * Vec3::UnitZ();
        if (n_plane.dot(poses[o].position - poses[p].position) > radius[o]) continue;
      } else if (!plane_i &&
                 (poses[i].position - poses[j].position).norm() > radius[i] + radius[j]) {
        continue;
      }
      detail::collide(world, i, j, contacts);
    }
  }
  return contacts;
}

namespace {

struct BodyDynamics {
  double inv_mass = 0.0;
  Mat3 inv_inertia = Mat3::Zero();  // world frame
};

struct ContactRow {
  int body_a;
  int body_b;
  Vec3 r_a;
  Vec3 r_b;
  Vec3 normal;
  Vec3 t1;
  Vec3 t2;
  double inv_mass_normal;  // 1 / effective mass along the normal
  Eigen::Matrix2d tangent_delassus;
  double approach_start;  // approach speed at the start of the step
  double mu;
  ImpedanceParams impedance;
  bool sliding;
  Vec3 slide_dir;  // unit, opposite to the pre-solve tangential velocity
  double inv_mass_slide;
  double lambda = 0.0;     // accumulated normal impulse
  double slide_impulse = 0.0;
  Eigen::Vector2d stick_impulse = Eigen::Vector2d::Zero();
};

double coupling(const BodyDynamics& a, const BodyDynamics& b, const Vec3& r_a,
                const Vec3& r_b, const Vec3& d1, const Vec3& d2) {
  double w = (a.inv_mass + b.inv_mass) * d1.dot(d2);
  w += r_a.cross(d1).dot(a.inv_inertia * r_a.cross(d2));
  w += r_b.cross(d1).dot(b.inv_inertia * r_b.cross(d2));
  return w;
}

Vec3 point_velocity(const RigidBodyState& body, const Vec3& r) {
  return body.linear_velocity + body.angular_velocity.cross(r);
}

void apply_impulse(RigidBodyState& body, const BodyDynamics& dyn, const Vec3& r,
                   const Vec3& impulse) {
  if (!body.is_dynamic()) return;
  body.linear_velocity += dyn.inv_mass * impulse;
  body.angular_velocity += dyn.inv_inertia * r.cross(impulse);
}

}  // namespace

void advance(WorldState& world) {
  if (!(world.dt > 0.0)) throw ModelError("dt must be positive");
  const double dt = world.dt;
  const int n_bodies = static_cast<int>(world.bodies.size());

  std::vector<BodyDynamics> dyn(n_bodies);
  for (int i = 0; i < n_bodies; ++i) {
    RigidBodyState& body = world.bodies[i];
    if (!body.is_dynamic()) continue;
    const Mat3 rot = body.orientation.toRotationMatrix();
    const Mat3 inertia_world = rot * scaled_inertia(body.inertia) * rot.transpose();
    dyn[i].inv_mass = 1.0 / body.mass;
    dyn[i].inv_inertia = rot * scaled_inertia(body.inertia).inverse() * rot.transpose();
    // unconstrained velocity update
    body.linear_velocity += dt * world.gravity;
    const Vec3& w = body.angular_velocity;
    body.angular_velocity += dt * (dyn[i].inv_inertia * (-w.cross(inertia_world * w)));
  }

  std::vector<ContactPoint> contacts = detect_contacts(world);
  std::vector<ContactRow> rows;
  rows.reserve(contacts.size());
  for (const ContactPoint& c : contacts) {
    ContactRow row;
    row.body_a = world.geoms[c.geom_a].parent_body;
    row.body_b = world.geoms[c.geom_b].parent_body;
    const RigidBodyState& ba = world.bodies[row.body_a];
    const RigidBodyState& bb = world.bodies[row.body_b];
    row.r_a = c.position - ba.position;
    row.r_b = c.position - bb.position;
    row.normal = c.normal;
    row.t1 = std::abs(c.normal.x()) < 0.9 ? c.normal.cross(Vec3::UnitX()).normalized()
                                          : c.normal.cross(Vec3::UnitY()).normalized();
    row.t2 = c.normal.cross(row.t1);
    const BodyDynamics& da = dyn[row.body_a];
    const BodyDynamics& db = dyn[row.body_b];
    row.inv_mass_normal = coupling(da, db, row.r_a, row.r_b, row.normal, row.normal);
    row.tangent_delassus << coupling(da, db, row.r_a, row.r_b, row.t1, row.t1),
        coupling(da, db, row.r_a, row.r_b, row.t1, row.t2),
        coupling(da, db, row.r_a, row.r_b, row.t2, row.t1),
        coupling(da, db, row.r_a, row.r_b, row.t2, row.t2);
    // velocities at the start of the step: remove the gravity increment again
    const Vec3 g_a = ba.is_dynamic() ? Vec3(dt * world.gravity) : Vec3::Zero();
    const Vec3 g_b = bb.is_dynamic() ? Vec3(dt * world.gravity) : Vec3::Zero();
    const Vec3 v_rel_start = (point_velocity(ba, row.r_a) - g_a) - (point_velocity(bb, row.r_b) - g_b);
    row.approach_start = -c.normal.dot(v_rel_start);
    const Vec3 v_rel = point_velocity(ba, row.r_a) - point_velocity(bb, row.r_b);
    const Vec3 v_t = v_rel - c.normal.dot(v_rel) * c.normal;
    row.mu = std::max(world.geoms[c.geom_a].mu1, world.geoms[c.geom_b].mu1);
    row.impedance = world.impedance_for(c.geom_a, c.geom_b);
    row.sliding = v_t.norm() > kStaticVelocityThreshold;
    row.slide_dir = row.sliding ? Vec3(-v_t.normalized()) : Vec3::Zero();
    row.inv_mass_slide =
        row.sliding ? coupling(da, db, row.r_a, row.r_b, row.slide_dir, row.slide_dir) : 0.0;
    rows.push_back(row);
    contacts[rows.size() - 1].tangential_velocity = v_t;
    contacts[rows.size() - 1].sliding = row.sliding;
  }

  const auto relative_velocity = [&](const ContactRow& row) {
    return point_velocity(world.bodies[row.body_a], row.r_a) -
           point_velocity(world.bodies[row.body_b], row.r_b);
  };
  const auto push = [&](const ContactRow& row, const Vec3& impulse) {
    apply_impulse(world.bodies[row.body_a], dyn[row.body_a], row.r_a, impulse);
    apply_impulse(world.bodies[row.body_b], dyn[row.body_b], row.r_b, -impulse);
  };

  for (int iter = 0; iter < world.solver_iterations; ++iter) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      ContactRow& row = rows[k];
      if (row.inv_mass_normal <= 0.0) continue;
      // normal: impedance law with this contact's own impulse removed from a0
      const double approach = -row.normal.dot(relative_velocity(row));
      const double free_approach = approach + row.lambda * row.inv_mass_normal;
      const double a0 = (free_approach - row.approach_start) / dt;
      const double a1 = constraint_acceleration(row.impedance, row.approach_start,
                                                contacts[k].penetration, a0);
      const double target = std::max(0.0, (a0 - a1) * dt / row.inv_mass_normal);
      push(row, (target - row.lambda) * row.normal);
      row.lambda = target;

      // friction, bounded by the current normal force
      const double f_n = row.lambda / dt;
      const Vec3 v_rel = relative_velocity(row);
      if (row.sliding) {
        if (row.inv_mass_slide <= 0.0) continue;
        const double cap =
            friction_force(row.mu, f_n, -row.slide_dir).norm() * dt;
        const double along = row.slide_dir.dot(v_rel);
        const double wanted = row.slide_impulse - along / row.inv_mass_slide;
        const double next = std::clamp(wanted, 0.0, cap);
        push(row, (next - row.slide_impulse) * row.slide_dir);
        row.slide_impulse = next;
      } else {
        const Eigen::Vector2d v2(row.t1.dot(v_rel), row.t2.dot(v_rel));
        const double det = row.tangent_delassus.determinant();
        if (!(det > 1e-300)) continue;
        const Eigen::Vector2d wanted =
            row.stick_impulse - row.tangent_delassus.inverse() * v2;
        const Vec3 residual = -(wanted.x() * row.t1 + wanted.y() * row.t2) / dt;
        const Vec3 force = friction_force(row.mu, f_n, Vec3::Zero(), residual);
        const Eigen::Vector2d next(force.dot(row.t1) * dt, force.dot(row.t2) * dt);
        const Eigen::Vector2d delta = next - row.stick_impulse;
        push(row, delta.x() * row.t1 + delta.y() * row.t2);
        row.stick_impulse = next;
      }
    }
  }

  for (std::size_t k = 0; k < rows.size(); ++k) {
    const ContactRow& row = rows[k];
    contacts[k].normal_force = std::max(0.0, row.lambda / dt);
    contacts[k].friction =
        row.sliding ? Vec3(row.slide_impulse / dt * row.slide_dir)
                    : Vec3((row.stick_impulse.x() * row.t1 + row.stick_impulse.y() * row.t2) / dt);
  }

  for (int i = 0; i < n_bodies; ++i) {
    RigidBodyState& body = world.bodies[i];
    if (body.is_static()) continue;
    body.position += dt * body.linear_velocity;
    body.orientation =
        normalized(quat_from_rotation_vector(dt * body.angular_velocity) * body.orientation);
    if (!all_finite(body.position) || !all_finite(body.orientation) ||
        !all_finite(body.linear_velocity) || !all_finite(body.angular_velocity)) {
      throw SimulationDiverged(i);
    }
  }
  world.contacts = std::move(contacts);
  world.time += dt;
}

double mechanical_energy(const WorldState& world) {
  double energy = 0.0;
  for (const auto& body : world.bodies) {
    if (!body.is_dynamic()) continue;
    const Mat3 rot = body.orientation.toRotationMatrix();
    const Mat3 inertia = rot * scaled_inertia(body.inertia) * rot.transpose();
    energy += 0.5 * body.mass * body.linear_velocity.squaredNorm();
    energy += 0.5 * body.angular_velocity.dot(inertia * body.angular_velocity);
    energy -= body.mass * world.gravity.dot(body.position);
  }
  return energy;
}

}  // namespace tacgrasp::physics
