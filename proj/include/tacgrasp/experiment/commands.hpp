#pragma once

// Train, evaluate and compare commands. Each writes its outputs into an
// output directory and a run.json manifest describing how to regenerate them.
//
//   train:    metrics.csv, checkpoint.json (rewritten at every evaluation), run.json
//   evaluate: trials.csv, table.txt, table.csv, run.json
//   compare:  trials.csv, table.txt, table.csv, run.json
//
// Errors: ConfigError for invalid configuration or mismatched checkpoints,
// TrainingDiverged when an update produces non-finite values (after writing
// diverged.json).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "tacgrasp/experiment/config.hpp"
#include "tacgrasp/experiment/evaluation.hpp"
#include "tacgrasp/experiment/success_table.hpp"
#include "tacgrasp/nn/checkpoint.hpp"
#include "tacgrasp/ppo/trainer.hpp"

namespace tacgrasp::experiment {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDiverged = 3;

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const ppo::MetricsRow& row);

// Mean evaluation reward over the last `n` evaluations; NaN without any.
double plateau_reward(const std::vector<ppo::MetricsRow>& rows, int n);

struct TrainSummary {
  ppo::TrainResult result;
  Condition condition = Condition::kTactile;
  std::uint64_t seed = 0;
  double plateau_reward = 0.0;
};

TrainSummary train_command(const ExperimentConfig& cfg, Condition condition, std::uint64_t seed,
                           const std::filesystem::path& out_dir, std::ostream* log = nullptr);

struct EvaluateSummary {
  Condition condition = Condition::kTactile;
  std::vector<TrialRecord> trials;
  SuccessTable table;
};

// `trials` overrides cfg.trials_per_condition when set. `policy` replaces the
// checkpoint network while keeping its condition.
EvaluateSummary evaluate_command(const nn::Checkpoint& ckpt, const ExperimentConfig& cfg,
                                 std::optional<int> trials, const std::filesystem::path& out_dir,
                                 const PolicyFactory* policy = nullptr);

struct CompareSummary {
  Condition te_condition = Condition::kTactile;  // condition each checkpoint ran under
  Condition td_condition = Condition::kNoTactile;
  std::vector<TrialRecord> trials;  // tactile column first
  SuccessTable table;
};

// Each checkpoint runs under the condition matching its observation size and
// fills the column it was passed for.
CompareSummary compare_command(const nn::Checkpoint& te, const nn::Checkpoint& td,
                               const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace tacgrasp::experiment
