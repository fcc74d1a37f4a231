#pragma once

// Experiment document:
//
//   {
//     "task": {...},                  // task configuration, see task_io.hpp
//     "ppo": {...},                   // trainer options, see PpoConfig
//     "shapes": ["column", "capsule", "ellipsoid", "sphere"],
//     "trials_per_condition": 100,
//     "base_seed": 1000,              // trial k uses splitmix64(base_seed + k)
//     "eval_noise": {...},            // optional; defaults to task.noise
//     "threads": 0                    // 0 = hardware concurrency
//   }
//
// The tactile condition is chosen per command, never in the document, so the
// two conditions share every other setting.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tacgrasp/grasp/grasp_env.hpp"
#include "tacgrasp/ppo/config.hpp"

namespace tacgrasp::experiment {

enum class Condition { kTactile, kNoTactile };

std::string condition_name(Condition c);  // "te" or "td"
// Throws ConfigError with field "condition".
Condition condition_from_name(const std::string& name);

struct ExperimentConfig {
  grasp::TaskConfig task;
  ppo::PpoConfig ppo;
  std::vector<grasp::ShapeKind> shapes{grasp::kCatalogShapes.begin(), grasp::kCatalogShapes.end()};
  int trials_per_condition = 100;
  std::uint64_t base_seed = 1000;
  std::optional<grasp::NoiseSpec> eval_noise;
  int threads = 0;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);
// Throws ConfigError when the file is missing or is not valid JSON.
ExperimentConfig load_experiment_config(const std::string& path);

ppo::PpoConfig ppo_config_from_json(const nlohmann::json& doc, const std::string& path);
nlohmann::json ppo_config_to_json(const ppo::PpoConfig& cfg);

// Task for a condition: identical to cfg.task apart from the tactile flag.
grasp::TaskConfig condition_task(const ExperimentConfig& cfg, Condition c);
// Observation length of the policy input under a condition.
int condition_obs_dim(const ExperimentConfig& cfg, Condition c);

int resolve_threads(int requested);

}  // namespace tacgrasp::experiment
