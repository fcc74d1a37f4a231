#include "tacgrasp/experiment/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/experiment/grasp_task.hpp"

namespace tacgrasp::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("cannot create output directory " + dir.string(), "out");
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string(), "out");
  return out;
}

void write_json(const fs::path& path, const json& doc) { open_out(path) << doc.dump(2) << '\n'; }

void write_tables(const fs::path& dir, const std::vector<TrialRecord>& trials,
                  const SuccessTable& table) {
  auto t = open_out(dir / "trials.csv");
  write_trials_csv(t, trials);
  auto txt = open_out(dir / "table.txt");
  write_table_text(txt, table);
  auto csv = open_out(dir / "table.csv");
  write_table_csv(csv, table);
}

json evaluation_manifest(const ExperimentConfig& cfg, int trials) {
  return {{"config", experiment_config_to_json(cfg)},
          {"trials_per_shape", trials},
          {"base_seed", cfg.base_seed},
          {"trial_seed_rule", "splitmix64(base_seed + trial)"}};
}

}  // namespace

void write_metrics_header(std::ostream& out) {
  out << "step,update,eval_reward,train_return,episodes,failures,policy_loss,value_loss,entropy,"
         "clip_fraction,approx_kl,phase,converged\n";
}

void write_metrics_row(std::ostream& out, const ppo::MetricsRow& r) {
  out << std::setprecision(10) << r.step << ',' << r.update << ',' << r.eval_reward << ','
      << r.train_return << ',' << r.episodes << ',' << r.failures << ',' << r.stats.policy_loss
      << ',' << r.stats.value_loss << ',' << r.stats.entropy << ',' << r.stats.clip_fraction << ','
      << r.stats.approx_kl << ',' << ppo::phase_name(r.phase) << ',' << (r.converged ? 1 : 0)
      << '\n';
}

double plateau_reward(const std::vector<ppo::MetricsRow>& rows, int n) {
  if (rows.empty() || n < 1) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t k = std::min(rows.size(), static_cast<std::size_t>(n));
  double sum = 0.0;
  for (std::size_t i = rows.size() - k; i < rows.size(); ++i) sum += rows[i].eval_reward;
  return sum / static_cast<double>(k);
}

TrainSummary train_command(const ExperimentConfig& cfg, Condition condition, std::uint64_t seed,
                           const fs::path& out_dir, std::ostream* log) {
  prepare_dir(out_dir);
  const grasp::TaskConfig task = condition_task(cfg, condition);
  const std::vector<grasp::ShapeKind> shapes = cfg.shapes;
  ppo::PpoTrainer trainer(
      cfg.ppo, [&](int) { return std::make_unique<GraspTaskEnv>(task, shapes); }, seed);

  json shape_names = json::array();
  for (auto s : shapes) shape_names.push_back(std::string(grasp::shape_name(s)));
  auto stamp = [&](nn::Checkpoint ck) {
    ck.metadata["condition"] = condition_name(condition);
    ck.metadata["seed"] = seed;
    ck.metadata["shapes"] = shape_names;
    return ck;
  };

  auto metrics = open_out(out_dir / "metrics.csv");
  write_metrics_header(metrics);
  metrics.flush();
  nn::save_checkpoint((out_dir / "checkpoint.json").string(), stamp(trainer.checkpoint()));

  ppo::TrainerHooks hooks;
  hooks.on_eval = [&](const ppo::MetricsRow& row, const nn::Checkpoint& ck) {
    write_metrics_row(metrics, row);
    metrics.flush();
    nn::save_checkpoint((out_dir / "checkpoint.json").string(), stamp(ck));
    if (log) {
      *log << "step " << row.step << "  eval reward " << row.eval_reward << "  phase "
           << ppo::phase_name(row.phase) << (row.converged ? "  converged" : "") << '\n';
    }
  };

  TrainSummary summary;
  summary.condition = condition;
  summary.seed = seed;
  try {
    summary.result = trainer.train(hooks);
  } catch (const TrainingDiverged& e) {
    write_json(out_dir / "diverged.json", {{"error", e.what()},
                                           {"step", trainer.steps()},
                                           {"seed", seed},
                                           {"condition", condition_name(condition)}});
    throw;
  }
  summary.plateau_reward = plateau_reward(summary.result.metrics, cfg.ppo.phase_window);
  nn::save_checkpoint((out_dir / "checkpoint.json").string(), stamp(summary.result.checkpoint));

  json manifest = {{"command", "train"},
                   {"version", kFormatVersion},
                   {"condition", condition_name(condition)},
                   {"seed", seed},
                   {"config", experiment_config_to_json(cfg)},
                   {"obs_dim", trainer.net().shape().obs_dim},
                   {"action_dim", trainer.net().shape().action_dim},
                   {"steps", summary.result.steps},
                   {"evaluations", summary.result.metrics.size()}};
  manifest["converged_step"] = summary.result.converged_step >= 0
                                   ? json(summary.result.converged_step)
                                   : json(nullptr);
  manifest["plateau_reward"] =
      std::isfinite(summary.plateau_reward) ? json(summary.plateau_reward) : json(nullptr);
  write_json(out_dir / "run.json", manifest);
  return summary;
}

EvaluateSummary evaluate_command(const nn::Checkpoint& ckpt, const ExperimentConfig& cfg,
                                 std::optional<int> trials, const fs::path& out_dir,
                                 const PolicyFactory* policy) {
  const int n = trials.value_or(cfg.trials_per_condition);
  if (n < 1) throw ConfigError("must be at least 1", "trials");
  EvaluateSummary s;
  s.condition = checkpoint_condition(ckpt, cfg);
  const grasp::TaskConfig task = evaluation_task(cfg, s.condition);
  const PolicyFactory factory = policy ? *policy : checkpoint_policy(ckpt, task);
  prepare_dir(out_dir);
  s.trials = run_trials(task, cfg.shapes, s.condition, n, cfg.base_seed, factory,
                        resolve_threads(cfg.threads));
  s.table = build_table(s.trials);
  write_tables(out_dir, s.trials, s.table);
  json manifest = evaluation_manifest(cfg, n);
  manifest["command"] = "evaluate";
  manifest["version"] = kFormatVersion;
  manifest["condition"] = condition_name(s.condition);
  manifest["checkpoint_step"] = ckpt.step;
  manifest["checkpoint_metadata"] = ckpt.metadata;
  write_json(out_dir / "run.json", manifest);
  return s;
}

CompareSummary compare_command(const nn::Checkpoint& te, const nn::Checkpoint& td,
                               const ExperimentConfig& cfg, const fs::path& out_dir) {
  CompareSummary s;
  s.te_condition = checkpoint_condition(te, cfg);
  s.td_condition = checkpoint_condition(td, cfg);
  const int n = cfg.trials_per_condition;
  const int threads = resolve_threads(cfg.threads);
  prepare_dir(out_dir);

  auto column = [&](const nn::Checkpoint& ck, Condition ran_as, Condition label) {
    const grasp::TaskConfig task = evaluation_task(cfg, ran_as);
    auto records =
        run_trials(task, cfg.shapes, ran_as, n, cfg.base_seed, checkpoint_policy(ck, task), threads);
    for (auto& r : records) r.condition = label;
    return records;
  };
  s.trials = column(te, s.te_condition, Condition::kTactile);
  const auto td_records = column(td, s.td_condition, Condition::kNoTactile);
  s.trials.insert(s.trials.end(), td_records.begin(), td_records.end());
  s.table = build_table(s.trials);
  write_tables(out_dir, s.trials, s.table);

  json manifest = evaluation_manifest(cfg, n);
  manifest["command"] = "compare";
  manifest["version"] = kFormatVersion;
  manifest["te_column"] = {{"ran_as", condition_name(s.te_condition)},
                           {"checkpoint_step", te.step},
                           {"checkpoint_metadata", te.metadata}};
  manifest["td_column"] = {{"ran_as", condition_name(s.td_condition)},
                           {"checkpoint_step", td.step},
                           {"checkpoint_metadata", td.metadata}};
  write_json(out_dir / "run.json", manifest);
  return s;
}

}  // namespace tacgrasp::experiment
