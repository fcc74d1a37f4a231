#include "tacgrasp/tactile/tactile_io.hpp"

#include "tacgrasp/errors.hpp"
#include "tacgrasp/physics/scene_io.hpp"

namespace tacgrasp::tactile {

using nlohmann::json;

TaxelLayout layout_from_json(const json& j, TaxelLayout base) {
  base.rows = j.value("rows", base.rows);
  base.cols = j.value("cols", base.cols);
  base.pitch = j.value("pitch", base.pitch);
  base.k = j.value("k", base.k);
  base.b = j.value("b", base.b);
  base.max_displacement = j.value("max_displacement", base.max_displacement);
  base.receptive_radius = j.value("receptive_radius", base.receptive_radius);
  base.mass = j.value("mass", base.mass);
  base.surface_offset = j.value("surface_offset", base.surface_offset);
  return base;
}

json layout_to_json(const TaxelLayout& l) {
  return {{"rows", l.rows},
          {"cols", l.cols},
          {"pitch", l.pitch},
          {"k", l.k},
          {"b", l.b},
          {"max_displacement", l.max_displacement},
          {"receptive_radius", l.receptive_radius},
          {"mass", l.mass},
          {"surface_offset", l.surface_offset}};
}

Scene scene_from_json(const json& doc) {
  Scene scene;
  scene.world = physics::world_from_json(doc);
  if (!doc.contains("tactile")) return scene;
  try {
    const json& jt = doc["tactile"];
    scene.stride = jt.value("stride", scene.stride);
    if (scene.stride < 1) throw ConfigError("must be >= 1", "tactile.stride");
    const json arrays = jt.value("arrays", json::array());
    for (std::size_t i = 0; i < arrays.size(); ++i) {
      const std::string field = "tactile.arrays[" + std::to_string(i) + "]";
      const json& ja = arrays[i];
      const json& pad = ja.at("pad");
      int geom = -1;
      if (pad.is_string()) {
        geom = physics::find_geom(scene.world, pad.get<std::string>());
      } else {
        geom = pad.get<int>();
      }
      if (geom < 0 || geom >= static_cast<int>(scene.world.geoms.size())) {
        throw ConfigError("pad geom out of range", field + ".pad");
      }
      Pose frame;
      if (ja.contains("frame")) {
        const json& jf = ja["frame"];
        if (jf.contains("position")) {
          const auto& p = jf["position"];
          frame.position = Vec3(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
        }
        if (jf.contains("orientation")) {
          const auto& q = jf["orientation"];
          frame.orientation = Quat(q.at(0).get<double>(), q.at(1).get<double>(),
                                   q.at(2).get<double>(), q.at(3).get<double>())
                                  .normalized();
        }
      }
      try {
        scene.arrays.push_back(TaxelArray::grid(layout_from_json(ja), geom, frame));
      } catch (const ConfigError& e) {
        throw ConfigError(e.what(), field);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed tactile section: ") + e.what(), "tactile");
  }
  return scene;
}

json scene_to_json(const Scene& scene) {
  json doc = physics::world_to_json(scene.world);
  json arrays = json::array();
  for (const TaxelArray& a : scene.arrays) {
    TaxelLayout l;
    l.rows = a.rows;
    l.cols = a.cols;
    l.pitch = a.pitch;
    if (!a.taxels.empty()) {
      const TaxelSpec& s = a.taxels.front().spec;
      l.k = s.k;
      l.b = s.b;
      l.max_displacement = s.max_displacement;
      l.receptive_radius = s.receptive_radius;
      l.mass = s.mass;
      l.surface_offset = s.local_position.z();
    }
    json ja = layout_to_json(l);
    ja["pad"] = scene.world.geoms[a.pad_geom].name;
    const Quat& q = a.frame.orientation;
    ja["frame"] = {{"position", {a.frame.position.x(), a.frame.position.y(), a.frame.position.z()}},
                   {"orientation", {q.w(), q.x(), q.y(), q.z()}}};
    arrays.push_back(ja);
  }
  doc["tactile"] = {{"stride", scene.stride}, {"arrays", arrays}};
  return doc;
}

}  // namespace tacgrasp::tactile
