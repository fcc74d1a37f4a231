#include "tacgrasp/experiment/evaluation.hpp"

#include <atomic>
#include <exception>
#include <iomanip>
#include <thread>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/experiment/grasp_task.hpp"
#include "tacgrasp/ppo/env.hpp"

namespace tacgrasp::experiment {

std::uint64_t trial_seed(std::uint64_t base_seed, int index) {
  return ppo::splitmix64(base_seed + static_cast<std::uint64_t>(index));
}

PolicyFactory checkpoint_policy(const nn::Checkpoint& ckpt, const grasp::TaskConfig& task) {
  grasp::Policy policy = network_policy(ckpt, task);
  return [policy] { return policy; };
}

TrialRecord run_trial(const grasp::TaskConfig& task, grasp::ShapeKind shape, Condition condition,
                      int index, std::uint64_t seed, const grasp::Policy& policy,
                      grasp::EpisodeTrace* trace) {
  grasp::TaskConfig t = task;
  t.shape = shape;
  grasp::GraspEnv env(t);
  grasp::EpisodeTrace tr = grasp::run_episode(env, policy, seed);
  TrialRecord rec;
  rec.shape = shape;
  rec.condition = condition;
  rec.index = index;
  rec.seed = seed;
  rec.success = grasp::is_success(tr, t.success);
  rec.failed = tr.failed;
  rec.steps = static_cast<int>(tr.steps.size());
  rec.total_reward = tr.total_reward();
  if (!tr.steps.empty()) {
    const auto& last = tr.steps.back();
    rec.final_reward = last.reward.total;
    rec.position_error = last.position_error;
    rec.orientation_error = last.orientation_error;
    rec.fingertips = last.fingertip_contacts;
  }
  if (trace) *trace = std::move(tr);
  return rec;
}

std::vector<TrialRecord> run_trials(const grasp::TaskConfig& task,
                                    const std::vector<grasp::ShapeKind>& shapes,
                                    Condition condition, int trials, std::uint64_t base_seed,
                                    const PolicyFactory& policies, int threads) {
  if (trials < 0) throw ArgumentError("trial count must be non-negative");
  const int total = static_cast<int>(shapes.size()) * trials;
  std::vector<TrialRecord> out(total);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(std::max(threads, 1));
  auto work = [&](int w) {
    try {
      for (int i = next++; i < total; i = next++) {
        const int k = i % trials;
        out[i] = run_trial(task, shapes[i / trials], condition, k, trial_seed(base_seed, k),
                           policies());
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  const int n = std::min(std::max(threads, 1), std::max(total, 1));
  if (n == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

grasp::TaskConfig evaluation_task(const ExperimentConfig& cfg, Condition condition) {
  grasp::TaskConfig task = condition_task(cfg, condition);
  if (cfg.eval_noise) task.noise = *cfg.eval_noise;
  return task;
}

Condition checkpoint_condition(const nn::Checkpoint& ckpt, const ExperimentConfig& cfg) {
  const int dim = ckpt.net.shape().obs_dim;
  const int te = condition_obs_dim(cfg, Condition::kTactile);
  const int td = condition_obs_dim(cfg, Condition::kNoTactile);
  const Condition inferred = dim == te   ? Condition::kTactile
                             : dim == td ? Condition::kNoTactile
                                         : throw ConfigError(
                                               "observation size " + std::to_string(dim) +
                                                   " matches neither te (" + std::to_string(te) +
                                                   ") nor td (" + std::to_string(td) + ")",
                                               "checkpoint");
  const auto it = ckpt.metadata.find("condition");
  if (it != ckpt.metadata.end()) {
    if (!it->is_string()) throw ConfigError("expected te or td", "checkpoint.metadata.condition");
    const Condition recorded = condition_from_name(it->get<std::string>());
    if (recorded != inferred) {
      throw ConfigError("condition/checkpoint mismatch: recorded " + condition_name(recorded) +
                            " but observation size " + std::to_string(dim) + " implies " +
                            condition_name(inferred),
                        "checkpoint");
    }
  }
  return inferred;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "shape,condition,trial,seed,success,failed,steps,final_reward,total_reward,"
         "position_error,orientation_error,fingertips\n";
  out << std::setprecision(10);
  for (const auto& r : records) {
    out << grasp::shape_name(r.shape) << ',' << condition_name(r.condition) << ',' << r.index
        << ',' << r.seed << ',' << (r.success ? 1 : 0) << ',' << (r.failed ? 1 : 0) << ','
        << r.steps << ',' << r.final_reward << ',' << r.total_reward << ',' << r.position_error
        << ',' << r.orientation_error << ',' << r.fingertips << '\n';
  }
}

}  // namespace tacgrasp::experiment
