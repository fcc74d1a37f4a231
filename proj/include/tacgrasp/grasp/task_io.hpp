#pragma once

// Task configuration document. Every key is optional:
//
//   {
//     "shape": "sphere", "tactile": true, "horizon": 200, "substeps": 4,
//     "dt": 0.002, "solver_iterations": 20, "f_contact_min": 0.1,
//     "noise": {"pos_sigma": 0.01, "ori_sigma": 0.05, "seed": 0},
//     "reward": {"beta": 2, "gamma": 10, "pos_scale": 10, "ori_scale": 50,
//                "no_contact_penalty": false},
//     "success": {"window": 25, "min_fingertips": 2,
//                 "max_position_error": 0.02, "max_orientation_error": 0.2},
//     "impedance": {"k": 1000, "b": 30, "d": 0.9},
//     "placement_jitter": 0.03,
//     "start_error": {"sigma": 0.01, "clip": 0.02},
//     "palm_clearance": 0.08, "preshape": [-0.15, 0.15],
//     "workspace_half_extent": [0.05, 0.05, 0.04], "settle_steps": 300,
//     "gripper": {"n_fingers": 3, "joints_per_finger": 2, "mount_radius": 0.06,
//                 "link_lengths": [0.05, 0.025], "link_radius": 0.008,
//                 "palm_radius": 0.02, "joint_limit": [-0.3, 1.2],
//                 "max_joint_step": 0.04, "max_translation_step": 0.003,
//                 "max_rotation_step": 0.02, "mu1": 0.8},
//     "pads": {"stride": 2, "rows": 8, "cols": 8, "pitch": 0.0025, "k": 500,
//              "b": 1, "max_displacement": 0.02, "receptive_radius": 0.003,
//              "mass": 0.001}
//   }

#include <string>

#include "json.hpp"
#include "tacgrasp/grasp/grasp_env.hpp"

namespace tacgrasp::grasp {

// Throws ConfigError naming the field (prefixed by `path`).
TaskConfig task_config_from_json(const nlohmann::json& doc, const std::string& path = "");
nlohmann::json task_config_to_json(const TaskConfig& cfg);

}  // namespace tacgrasp::grasp
