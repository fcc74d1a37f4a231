#include "tacgrasp/experiment/config.hpp"

#include <cmath>
#include <fstream>
#include <thread>

#include "tacgrasp/config_fields.hpp"
#include "tacgrasp/errors.hpp"
#include "tacgrasp/grasp/task_io.hpp"

namespace tacgrasp::experiment {

using nlohmann::json;
using config::join;
using config::read;

std::string condition_name(Condition c) { return c == Condition::kTactile ? "te" : "td"; }

Condition condition_from_name(const std::string& name) {
  if (name == "te") return Condition::kTactile;
  if (name == "td") return Condition::kNoTactile;
  throw ConfigError("expected te or td, got '" + name + "'", "condition");
}

ppo::PpoConfig ppo_config_from_json(const json& doc, const std::string& path) {
  config::reject_unknown(
      doc,
      {"clip_eps", "discount", "gae_lambda", "rollout_steps", "n_envs", "epochs", "minibatch", "lr",
       "entropy_coef", "value_coef", "max_grad_norm", "reward_scale", "max_steps", "hidden",
       "init_log_std", "eval_interval", "eval_episodes", "convergence_window",
       "convergence_threshold", "reward_floor", "oscillation_threshold", "phase_window",
       "stop_on_convergence"},
      path);
  ppo::PpoConfig c;
  c.clip_eps = read(doc, "clip_eps", c.clip_eps, path);
  c.discount = read(doc, "discount", c.discount, path);
  c.gae_lambda = read(doc, "gae_lambda", c.gae_lambda, path);
  c.rollout_steps = read(doc, "rollout_steps", c.rollout_steps, path);
  c.n_envs = read(doc, "n_envs", c.n_envs, path);
  c.epochs = read(doc, "epochs", c.epochs, path);
  c.minibatch = read(doc, "minibatch", c.minibatch, path);
  c.lr = read(doc, "lr", c.lr, path);
  c.entropy_coef = read(doc, "entropy_coef", c.entropy_coef, path);
  c.value_coef = read(doc, "value_coef", c.value_coef, path);
  c.max_grad_norm = read(doc, "max_grad_norm", c.max_grad_norm, path);
  c.reward_scale = read(doc, "reward_scale", c.reward_scale, path);
  c.max_steps = read(doc, "max_steps", c.max_steps, path);
  if (doc.contains("hidden")) {
    const json& h = doc["hidden"];
    config::require(h.is_array(), "expected an array of layer sizes", join(path, "hidden"));
    c.hidden.clear();
    for (const json& v : h) {
      config::require(v.is_number_integer(), "expected integer layer sizes", join(path, "hidden"));
      c.hidden.push_back(v.get<int>());
    }
  }
  c.init_log_std = read(doc, "init_log_std", c.init_log_std, path);
  c.eval_interval = read(doc, "eval_interval", c.eval_interval, path);
  c.eval_episodes = read(doc, "eval_episodes", c.eval_episodes, path);
  c.convergence_window = read(doc, "convergence_window", c.convergence_window, path);
  c.convergence_threshold = read(doc, "convergence_threshold", c.convergence_threshold, path);
  c.reward_floor = read(doc, "reward_floor", c.reward_floor, path);
  c.oscillation_threshold = read(doc, "oscillation_threshold", c.oscillation_threshold, path);
  c.phase_window = read(doc, "phase_window", c.phase_window, path);
  c.stop_on_convergence = read(doc, "stop_on_convergence", c.stop_on_convergence, path);
  try {
    ppo::validate_ppo_config(c);
  } catch (const ConfigError& e) {
    throw ConfigError(e.message(), join(path, e.field()));
  }
  return c;
}

json ppo_config_to_json(const ppo::PpoConfig& c) {
  return {{"clip_eps", c.clip_eps},
          {"discount", c.discount},
          {"gae_lambda", c.gae_lambda},
          {"rollout_steps", c.rollout_steps},
          {"n_envs", c.n_envs},
          {"epochs", c.epochs},
          {"minibatch", c.minibatch},
          {"lr", c.lr},
          {"entropy_coef", c.entropy_coef},
          {"value_coef", c.value_coef},
          {"max_grad_norm", c.max_grad_norm},
          {"reward_scale", c.reward_scale},
          {"max_steps", c.max_steps},
          {"hidden", c.hidden},
          {"init_log_std", c.init_log_std},
          {"eval_interval", c.eval_interval},
          {"eval_episodes", c.eval_episodes},
          {"convergence_window", c.convergence_window},
          {"convergence_threshold", c.convergence_threshold},
          {"reward_floor", c.reward_floor},
          {"oscillation_threshold", c.oscillation_threshold},
          {"phase_window", c.phase_window},
          {"stop_on_convergence", c.stop_on_convergence}};
}

namespace {

grasp::NoiseSpec noise_from_json(const json& doc, const std::string& path) {
  config::reject_unknown(doc, {"pos_sigma", "ori_sigma", "seed"}, path);
  grasp::NoiseSpec n;
  n.pos_sigma = read(doc, "pos_sigma", n.pos_sigma, path);
  n.ori_sigma = read(doc, "ori_sigma", n.ori_sigma, path);
  n.seed = read(doc, "seed", n.seed, path);
  config::require(n.pos_sigma >= 0.0 && std::isfinite(n.pos_sigma), "must be non-negative",
                  join(path, "pos_sigma"));
  config::require(n.ori_sigma >= 0.0 && std::isfinite(n.ori_sigma), "must be non-negative",
                  join(path, "ori_sigma"));
  return n;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const json& doc) {
  config::reject_unknown(doc,
                         {"task", "ppo", "shapes", "trials_per_condition", "base_seed",
                          "eval_noise", "threads"},
                         "");
  ExperimentConfig cfg;
  cfg.task = grasp::task_config_from_json(config::section(doc, "task", ""), "task");
  cfg.ppo = ppo_config_from_json(config::section(doc, "ppo", ""), "ppo");
  if (doc.contains("shapes")) {
    const json& s = doc["shapes"];
    config::require(s.is_array() && !s.empty(), "expected a non-empty array", "shapes");
    cfg.shapes.clear();
    for (const json& v : s) {
      config::require(v.is_string(), "expected shape names", "shapes");
      grasp::ShapeKind k;
      try {
        k = grasp::shape_from_name(v.get<std::string>());
      } catch (const ConfigError& e) {
        throw ConfigError(e.message(), "shapes");
      }
      for (auto existing : cfg.shapes) {
        config::require(existing != k, "duplicate shape " + v.get<std::string>(), "shapes");
      }
      cfg.shapes.push_back(k);
    }
  }
  cfg.trials_per_condition = read(doc, "trials_per_condition", cfg.trials_per_condition, "");
  config::require(cfg.trials_per_condition >= 1, "must be at least 1", "trials_per_condition");
  cfg.base_seed = read(doc, "base_seed", cfg.base_seed, "");
  if (doc.contains("eval_noise")) {
    cfg.eval_noise = noise_from_json(config::section(doc, "eval_noise", ""), "eval_noise");
  }
  cfg.threads = read(doc, "threads", cfg.threads, "");
  config::require(cfg.threads >= 0, "must be non-negative", "threads");
  return cfg;
}

json experiment_config_to_json(const ExperimentConfig& cfg) {
  json shapes = json::array();
  for (auto s : cfg.shapes) shapes.push_back(std::string(grasp::shape_name(s)));
  json doc = {{"task", grasp::task_config_to_json(cfg.task)},
              {"ppo", ppo_config_to_json(cfg.ppo)},
              {"shapes", shapes},
              {"trials_per_condition", cfg.trials_per_condition},
              {"base_seed", cfg.base_seed},
              {"threads", cfg.threads}};
  if (cfg.eval_noise) {
    doc["eval_noise"] = {{"pos_sigma", cfg.eval_noise->pos_sigma},
                         {"ori_sigma", cfg.eval_noise->ori_sigma},
                         {"seed", cfg.eval_noise->seed}};
  }
  return doc;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path, "config");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what(), "config");
  }
  return experiment_config_from_json(doc);
}

grasp::TaskConfig condition_task(const ExperimentConfig& cfg, Condition c) {
  grasp::TaskConfig task = cfg.task;
  task.tactile = c == Condition::kTactile;
  return task;
}

int condition_obs_dim(const ExperimentConfig& cfg, Condition c) {
  return grasp::GraspEnv(condition_task(cfg, c)).observation_size();
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace tacgrasp::experiment
