#pragma once

// "tactile" section of a scene document:
//
//   "tactile": {
//     "stride": 2,
//     "arrays": [{"pad": "<geom name or index>", "rows": 8, "cols": 8,
//                 "pitch": 0.002, "k": 500, "b": 1.0,
//                 "max_displacement": 0.02, "receptive_radius": 0.003,
//                 "mass": 0.001, "surface_offset": 0.0,
//                 "frame": {"position": [..], "orientation": [w, x, y, z]}}]
//   }
//
// Logged tactile observation vectors are the arrays' point-sampled grids in
// the listed order, each flattened row-major (see tactile_observation).

#include <vector>

#include "json.hpp"
#include "tacgrasp/tactile/taxel_array.hpp"

namespace tacgrasp::tactile {

struct Scene {
  physics::WorldState world;
  std::vector<TaxelArray> arrays;
  int stride = 2;
};

Scene scene_from_json(const nlohmann::json& doc);
nlohmann::json scene_to_json(const Scene& scene);

TaxelLayout layout_from_json(const nlohmann::json& j, TaxelLayout base = {});
nlohmann::json layout_to_json(const TaxelLayout& layout);

}  // namespace tacgrasp::tactile
