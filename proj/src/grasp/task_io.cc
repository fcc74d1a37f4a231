#include "tacgrasp/grasp/task_io.hpp"

#include "tacgrasp/config_fields.hpp"
#include "tacgrasp/tactile/tactile_io.hpp"

namespace tacgrasp::grasp {

using nlohmann::json;
using config::join;
using config::read;

namespace {

std::vector<double> read_numbers(const json& obj, std::string_view key,
                                 std::vector<double> fallback, const std::string& path) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) return fallback;
  const std::string field = join(path, key);
  if (!it->is_array()) throw ConfigError("expected an array of numbers", field);
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) throw ConfigError("expected an array of numbers", field);
    out.push_back(v.get<double>());
  }
  return out;
}

Vec3 read_vec3(const json& obj, std::string_view key, const Vec3& fallback,
               const std::string& path) {
  const auto v = read_numbers(obj, key, {fallback.x(), fallback.y(), fallback.z()}, path);
  if (v.size() != 3) throw ConfigError("expected 3 numbers", join(path, key));
  return {v[0], v[1], v[2]};
}

GripperParams read_gripper(const json& j, GripperParams g, const std::string& path) {
  config::reject_unknown(j,
                         {"n_fingers", "joints_per_finger", "mount_radius", "link_lengths",
                          "link_radius", "palm_radius", "joint_limit", "max_joint_step",
                          "max_translation_step", "max_rotation_step", "mu1"},
                         path);
  g.n_fingers = read(j, "n_fingers", g.n_fingers, path);
  g.joints_per_finger = read(j, "joints_per_finger", g.joints_per_finger, path);
  g.mount_radius = read(j, "mount_radius", g.mount_radius, path);
  g.link_lengths = read_numbers(j, "link_lengths", g.link_lengths, path);
  g.link_radius = read(j, "link_radius", g.link_radius, path);
  g.palm_radius = read(j, "palm_radius", g.palm_radius, path);
  const auto limit = read_numbers(j, "joint_limit", {g.joint_limit.min, g.joint_limit.max}, path);
  if (limit.size() != 2) throw ConfigError("expected [min, max]", join(path, "joint_limit"));
  g.joint_limit = {limit[0], limit[1]};
  g.max_joint_step = read(j, "max_joint_step", g.max_joint_step, path);
  g.max_translation_step = read(j, "max_translation_step", g.max_translation_step, path);
  g.max_rotation_step = read(j, "max_rotation_step", g.max_rotation_step, path);
  g.mu1 = read(j, "mu1", g.mu1, path);
  return g;
}

}  // namespace

TaskConfig task_config_from_json(const json& doc, const std::string& path) {
  TaskConfig cfg;
  config::reject_unknown(doc,
                         {"shape", "tactile", "horizon", "substeps", "dt", "solver_iterations",
                          "f_contact_min", "noise", "reward", "success", "impedance",
                          "placement_jitter", "start_error", "palm_clearance", "preshape",
                          "workspace_half_extent", "settle_steps", "gripper", "pads"},
                         path);
  try {
    cfg.shape = shape_from_name(read<std::string>(doc, "shape", "sphere", path));
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), join(path, "shape"));
  }
  cfg.tactile = read(doc, "tactile", cfg.tactile, path);
  cfg.horizon = read(doc, "horizon", cfg.horizon, path);
  cfg.substeps = read(doc, "substeps", cfg.substeps, path);
  cfg.dt = read(doc, "dt", cfg.dt, path);
  cfg.solver_iterations = read(doc, "solver_iterations", cfg.solver_iterations, path);
  cfg.f_contact_min = read(doc, "f_contact_min", cfg.f_contact_min, path);

  const std::string noise_path = join(path, "noise");
  const json& noise = config::section(doc, "noise", path);
  config::reject_unknown(noise, {"pos_sigma", "ori_sigma", "seed"}, noise_path);
  cfg.noise.pos_sigma = read(noise, "pos_sigma", cfg.noise.pos_sigma, noise_path);
  cfg.noise.ori_sigma = read(noise, "ori_sigma", cfg.noise.ori_sigma, noise_path);
  cfg.noise.seed = read(noise, "seed", cfg.noise.seed, noise_path);

  const std::string reward_path = join(path, "reward");
  const json& reward = config::section(doc, "reward", path);
  config::reject_unknown(reward, {"beta", "gamma", "pos_scale", "ori_scale", "no_contact_penalty"},
                         reward_path);
  cfg.reward.beta = read(reward, "beta", cfg.reward.beta, reward_path);
  cfg.reward.gamma = read(reward, "gamma", cfg.reward.gamma, reward_path);
  cfg.reward.pos_scale = read(reward, "pos_scale", cfg.reward.pos_scale, reward_path);
  cfg.reward.ori_scale = read(reward, "ori_scale", cfg.reward.ori_scale, reward_path);
  cfg.reward.no_contact_penalty =
      read(reward, "no_contact_penalty", cfg.reward.no_contact_penalty, reward_path);

  const std::string success_path = join(path, "success");
  const json& success = config::section(doc, "success", path);
  config::reject_unknown(
      success, {"window", "min_fingertips", "max_position_error", "max_orientation_error"},
      success_path);
  cfg.success.window = read(success, "window", cfg.success.window, success_path);
  cfg.success.min_fingertips =
      read(success, "min_fingertips", cfg.success.min_fingertips, success_path);
  cfg.success.max_position_error =
      read(success, "max_position_error", cfg.success.max_position_error, success_path);
  cfg.success.max_orientation_error =
      read(success, "max_orientation_error", cfg.success.max_orientation_error, success_path);

  const std::string imp_path = join(path, "impedance");
  const json& imp = config::section(doc, "impedance", path);
  config::reject_unknown(imp, {"k", "b", "d"}, imp_path);
  cfg.impedance.k = read(imp, "k", cfg.impedance.k, imp_path);
  cfg.impedance.b = read(imp, "b", cfg.impedance.b, imp_path);
  cfg.impedance.d = read(imp, "d", cfg.impedance.d, imp_path);

  cfg.placement_jitter = read(doc, "placement_jitter", cfg.placement_jitter, path);
  const std::string start_path = join(path, "start_error");
  const json& start = config::section(doc, "start_error", path);
  config::reject_unknown(start, {"sigma", "clip"}, start_path);
  cfg.start_error_sigma = read(start, "sigma", cfg.start_error_sigma, start_path);
  cfg.start_error_clip = read(start, "clip", cfg.start_error_clip, start_path);
  cfg.palm_clearance = read(doc, "palm_clearance", cfg.palm_clearance, path);
  cfg.preshape = read_numbers(doc, "preshape", cfg.preshape, path);
  cfg.workspace_half_extent =
      read_vec3(doc, "workspace_half_extent", cfg.workspace_half_extent, path);
  cfg.settle_steps = read(doc, "settle_steps", cfg.settle_steps, path);

  cfg.gripper = read_gripper(config::section(doc, "gripper", path), cfg.gripper,
                             join(path, "gripper"));

  const std::string pads_path = join(path, "pads");
  const json& pads = config::section(doc, "pads", path);
  config::reject_unknown(pads,
                         {"stride", "rows", "cols", "pitch", "k", "b", "max_displacement",
                          "receptive_radius", "mass"},
                         pads_path);
  cfg.tactile_stride = read(pads, "stride", cfg.tactile_stride, pads_path);
  json layout = pads;
  layout.erase("stride");
  try {
    cfg.pad_layout = tactile::layout_from_json(layout, cfg.pad_layout);
  } catch (const json::exception& e) {
    throw ConfigError(e.what(), pads_path);
  }

  try {
    validate_task_config(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), path.empty() ? e.field() : join(path, e.field()));
  }
  return cfg;
}

json task_config_to_json(const TaskConfig& cfg) {
  json pads = tactile::layout_to_json(cfg.pad_layout);
  pads.erase("surface_offset");
  pads["stride"] = cfg.tactile_stride;
  const GripperParams& g = cfg.gripper;
  return {
      {"shape", std::string(shape_name(cfg.shape))},
      {"tactile", cfg.tactile},
      {"horizon", cfg.horizon},
      {"substeps", cfg.substeps},
      {"dt", cfg.dt},
      {"solver_iterations", cfg.solver_iterations},
      {"f_contact_min", cfg.f_contact_min},
      {"noise",
       {{"pos_sigma", cfg.noise.pos_sigma},
        {"ori_sigma", cfg.noise.ori_sigma},
        {"seed", cfg.noise.seed}}},
      {"reward",
       {{"beta", cfg.reward.beta},
        {"gamma", cfg.reward.gamma},
        {"pos_scale", cfg.reward.pos_scale},
        {"ori_scale", cfg.reward.ori_scale},
        {"no_contact_penalty", cfg.reward.no_contact_penalty}}},
      {"success",
       {{"window", cfg.success.window},
        {"min_fingertips", cfg.success.min_fingertips},
        {"max_position_error", cfg.success.max_position_error},
        {"max_orientation_error", cfg.success.max_orientation_error}}},
      {"impedance", {{"k", cfg.impedance.k}, {"b", cfg.impedance.b}, {"d", cfg.impedance.d}}},
      {"placement_jitter", cfg.placement_jitter},
      {"start_error", {{"sigma", cfg.start_error_sigma}, {"clip", cfg.start_error_clip}}},
      {"palm_clearance", cfg.palm_clearance},
      {"preshape", cfg.preshape},
      {"workspace_half_extent",
       {cfg.workspace_half_extent.x(), cfg.workspace_half_extent.y(),
        cfg.workspace_half_extent.z()}},
      {"settle_steps", cfg.settle_steps},
      {"gripper",
       {{"n_fingers", g.n_fingers},
        {"joints_per_finger", g.joints_per_finger},
        {"mount_radius", g.mount_radius},
        {"link_lengths", g.link_lengths},
        {"link_radius", g.link_radius},
        {"palm_radius", g.palm_radius},
        {"joint_limit", {g.joint_limit.min, g.joint_limit.max}},
        {"max_joint_step", g.max_joint_step},
        {"max_translation_step", g.max_translation_step},
        {"max_rotation_step", g.max_rotation_step},
        {"mu1", g.mu1}}},
      {"pads", pads},
  };
}

}  // namespace tacgrasp::grasp
