// tacgrasp: train, evaluate and compare grasping policies.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tacgrasp/errors.hpp"
#include "tacgrasp/experiment/commands.hpp"

namespace ex = tacgrasp::experiment;

namespace {

void print_table(const ex::SuccessTable& table) { ex::write_table_text(std::cout, table); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tactile grasping experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir, condition = "te";
  std::uint64_t seed = 0;
  auto* train = app.add_subcommand("train", "Train a policy");
  train->add_option("--config", config_path, "Experiment JSON")->required();
  train->add_option("--condition", condition, "te (tactile) or td (no tactile)")
      ->check(CLI::IsMember({"te", "td"}));
  train->add_option("--seed", seed, "Training seed");
  train->add_option("--out", out_dir, "Output directory")->required();

  std::string checkpoint_path;
  std::optional<int> trials;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a checkpoint");
  evaluate->add_option("--checkpoint", checkpoint_path, "Checkpoint JSON")->required();
  evaluate->add_option("--config", config_path, "Experiment JSON")->required();
  evaluate->add_option("--trials", trials, "Trials per shape");
  evaluate->add_option("--out", out_dir, "Output directory")->required();

  std::string te_path, td_path;
  auto* compare = app.add_subcommand("compare", "Compare tactile and no-tactile checkpoints");
  compare->add_option("--te", te_path, "Tactile checkpoint")->required();
  compare->add_option("--td", td_path, "No-tactile checkpoint")->required();
  compare->add_option("--config", config_path, "Experiment JSON")->required();
  compare->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ex::kExitOk : ex::kExitConfigError;
  }

  try {
    const ex::ExperimentConfig cfg = ex::load_experiment_config(config_path);
    if (*train) {
      const auto s =
          ex::train_command(cfg, ex::condition_from_name(condition), seed, out_dir, &std::cerr);
      std::cout << "trained " << s.result.steps << " steps; plateau reward " << s.plateau_reward
                << '\n';
    } else if (*evaluate) {
      const auto ckpt = tacgrasp::nn::load_checkpoint(checkpoint_path);
      const auto s = ex::evaluate_command(ckpt, cfg, trials, out_dir);
      print_table(s.table);
    } else if (*compare) {
      const auto te = tacgrasp::nn::load_checkpoint(te_path);
      const auto td = tacgrasp::nn::load_checkpoint(td_path);
      const auto s = ex::compare_command(te, td, cfg, out_dir);
      print_table(s.table);
    }
  } catch (const tacgrasp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ex::kExitConfigError;
  } catch (const tacgrasp::TrainingDiverged& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return ex::kExitDiverged;
  } catch (const tacgrasp::SimulationDiverged& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return ex::kExitDiverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return ex::kExitOk;
}
