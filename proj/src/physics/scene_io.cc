#include "tacgrasp/physics/scene_io.hpp"

#include <functional>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::physics {

using nlohmann::json;

namespace {

Vec3 read_vec3(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3-vector", field);
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Quat read_quat(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 4) throw ConfigError("expected [w, x, y, z]", field);
  Quat q(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
  if (q.norm() < 1e-12) throw ConfigError("zero quaternion", field);
  return q.normalized();
}

Mat3 read_mat3(const json& j, const std::string& field) {
  if (j.is_number()) return Mat3::Constant(j.get<double>());
  if (j.is_array() && j.size() == 3 && j[0].is_number()) {
    return read_vec3(j, field).asDiagonal();
  }
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected a 3x3 matrix", field);
  Mat3 m;
  for (int r = 0; r < 3; ++r) m.row(r) = read_vec3(j[r], field).transpose();
  return m;
}

json write_vec3(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json write_quat(const Quat& q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }
json write_mat3(const Mat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(write_vec3(m.row(r).transpose()));
  return rows;
}

ImpedanceParams read_impedance(const json& j, ImpedanceParams base) {
  base.k = j.value("k", base.k);
  base.b = j.value("b", base.b);
  base.d = j.value("d", base.d);
  return base;
}

json write_impedance(const ImpedanceParams& p) { return {{"k", p.k}, {"b", p.b}, {"d", p.d}}; }

Shape read_shape(const json& j, const std::string& field) {
  const std::string type = j.value("type", "");
  if (type == "sphere") return Sphere{j.at("radius").get<double>()};
  if (type == "capsule") {
    return Capsule{j.at("radius").get<double>(), j.at("half_length").get<double>()};
  }
  if (type == "ellipsoid") return Ellipsoid{read_vec3(j.at("radii"), field + ".radii")};
  if (type == "box") return Box{read_vec3(j.at("half_extents"), field + ".half_extents")};
  if (type == "cylinder") {
    return Cylinder{j.at("radius").get<double>(), j.at("half_length").get<double>()};
  }
  if (type == "plane") return Plane{};
  throw ConfigError("unknown shape type '" + type + "'", field + ".type");
}

json write_shape(const Shape& shape) {
  json j = {{"type", shape_name(shape)}};
  if (const auto* s = std::get_if<Sphere>(&shape)) j["radius"] = s->radius;
  if (const auto* c = std::get_if<Capsule>(&shape)) {
    j["radius"] = c->radius;
    j["half_length"] = c->half_length;
  }
  if (const auto* e = std::get_if<Ellipsoid>(&shape)) j["radii"] = write_vec3(e->radii);
  if (const auto* b = std::get_if<Box>(&shape)) j["half_extents"] = write_vec3(b->half_extents);
  if (const auto* c = std::get_if<Cylinder>(&shape)) {
    j["radius"] = c->radius;
    j["half_length"] = c->half_length;
  }
  return j;
}

BodyKind read_kind(const std::string& s, const std::string& field) {
  if (s == "dynamic") return BodyKind::kDynamic;
  if (s == "static") return BodyKind::kStatic;
  if (s == "kinematic") return BodyKind::kKinematic;
  throw ConfigError("unknown body kind '" + s + "'", field);
}

std::string kind_name(BodyKind k) {
  switch (k) {
    case BodyKind::kDynamic: return "dynamic";
    case BodyKind::kStatic: return "static";
    case BodyKind::kKinematic: return "kinematic";
  }
  return "dynamic";
}

int resolve(const json& ref, int count, const std::function<int(const std::string&)>& by_name,
            const std::string& field) {
  if (ref.is_number_integer()) {
    const int idx = ref.get<int>();
    if (idx < 0 || idx >= count) throw ConfigError("index out of range", field);
    return idx;
  }
  if (ref.is_string()) return by_name(ref.get<std::string>());
  throw ConfigError("expected a name or index", field);
}

}  // namespace

int find_geom(const WorldState& world, const std::string& name) {
  for (std::size_t i = 0; i < world.geoms.size(); ++i) {
    if (world.geoms[i].name == name) return static_cast<int>(i);
  }
  throw ConfigError("no geom named '" + name + "'");
}

int find_body(const WorldState& world, const std::string& name) {
  for (std::size_t i = 0; i < world.bodies.size(); ++i) {
    if (world.bodies[i].name == name) return static_cast<int>(i);
  }
  throw ConfigError("no body named '" + name + "'");
}

WorldState world_from_json(const json& doc) {
  WorldState world;
  try {
    world.dt = doc.value("dt", world.dt);
    if (doc.contains("gravity")) world.gravity = read_vec3(doc["gravity"], "gravity");
    world.solver_iterations = doc.value("solver_iterations", world.solver_iterations);
    if (doc.contains("impedance")) world.impedance = read_impedance(doc["impedance"], world.impedance);

    const json bodies = doc.value("bodies", json::array());
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      const json& jb = bodies[i];
      const std::string field = "bodies[" + std::to_string(i) + "]";
      RigidBodyState b;
      b.name = jb.value("name", "body" + std::to_string(i));
      b.kind = read_kind(jb.value("kind", "dynamic"), field + ".kind");
      if (jb.contains("position")) b.position = read_vec3(jb["position"], field + ".position");
      if (jb.contains("orientation")) b.orientation = read_quat(jb["orientation"], field + ".orientation");
      if (jb.contains("linear_velocity")) b.linear_velocity = read_vec3(jb["linear_velocity"], field + ".linear_velocity");
      if (jb.contains("angular_velocity")) b.angular_velocity = read_vec3(jb["angular_velocity"], field + ".angular_velocity");
      b.mass = jb.value("mass", b.mass);
      if (jb.contains("inertia")) b.inertia.tensor = read_mat3(jb["inertia"], field + ".inertia");
      if (jb.contains("alpha")) b.inertia.alpha = read_mat3(jb["alpha"], field + ".alpha");
      world.add_body(std::move(b));
    }

    const json geoms = doc.value("geoms", json::array());
    for (std::size_t i = 0; i < geoms.size(); ++i) {
      const json& jg = geoms[i];
      const std::string field = "geoms[" + std::to_string(i) + "]";
      GeomSpec g;
      g.name = jg.value("name", "geom" + std::to_string(i));
      g.shape = read_shape(jg.at("shape"), field + ".shape");
      g.contype = jg.value("contype", g.contype);
      g.conaffinity = jg.value("conaffinity", g.conaffinity);
      g.mu1 = jg.value("mu1", g.mu1);
      g.parent_body = resolve(jg.value("body", json(0)), static_cast<int>(world.bodies.size()),
                              [&](const std::string& n) { return find_body(world, n); },
                              field + ".body");
      if (jg.contains("position")) g.local_pose.position = read_vec3(jg["position"], field + ".position");
      if (jg.contains("orientation")) g.local_pose.orientation = read_quat(jg["orientation"], field + ".orientation");
      world.add_geom(std::move(g));
    }

    const json pairs = doc.value("pair_impedance", json::array());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string field = "pair_impedance[" + std::to_string(i) + "]";
      const json& ref = pairs[i].at("geoms");
      if (!ref.is_array() || ref.size() != 2) throw ConfigError("expected two geoms", field);
      const auto by_name = [&](const std::string& n) { return find_geom(world, n); };
      const int count = static_cast<int>(world.geoms.size());
      world.set_pair_impedance(resolve(ref[0], count, by_name, field),
                               resolve(ref[1], count, by_name, field),
                               read_impedance(pairs[i], world.impedance));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scene: ") + e.what());
  }
  try {
    validate_world(world);
  } catch (const ModelError& e) {
    throw ConfigError(e.what(), "scene");
  }
  return world;
}

json world_to_json(const WorldState& world) {
  json doc;
  doc["dt"] = world.dt;
  doc["gravity"] = write_vec3(world.gravity);
  doc["solver_iterations"] = world.solver_iterations;
  doc["impedance"] = write_impedance(world.impedance);
  json bodies = json::array();
  for (const auto& b : world.bodies) {
    bodies.push_back({{"name", b.name},
                      {"kind", kind_name(b.kind)},
                      {"position", write_vec3(b.position)},
                      {"orientation", write_quat(b.orientation)},
                      {"linear_velocity", write_vec3(b.linear_velocity)},
                      {"angular_velocity", write_vec3(b.angular_velocity)},
                      {"mass", b.mass},
                      {"inertia", write_mat3(b.inertia.tensor)},
                      {"alpha", write_mat3(b.inertia.alpha)}});
  }
  doc["bodies"] = bodies;
  json geoms = json::array();
  for (const auto& g : world.geoms) {
    geoms.push_back({{"name", g.name},
                     {"body", g.parent_body},
                     {"shape", write_shape(g.shape)},
                     {"contype", g.contype},
                     {"conaffinity", g.conaffinity},
                     {"mu1", g.mu1},
                     {"position", write_vec3(g.local_pose.position)},
                     {"orientation", write_quat(g.local_pose.orientation)}});
  }
  doc["geoms"] = geoms;
  json pairs = json::array();
  for (const auto& [key, p] : world.pair_impedance) {
    json jp = write_impedance(p);
    jp["geoms"] = json::array({key.first, key.second});
    pairs.push_back(jp);
  }
  doc["pair_impedance"] = pairs;
  return doc;
}

}  // namespace tacgrasp::physics
