#include "tacgrasp/ppo/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::ppo {

namespace {

constexpr std::uint64_t kNetStream = 0x6e6574ULL;
constexpr std::uint64_t kUpdateStream = 0x757064ULL;
constexpr std::uint64_t kWorkerStream = 0x776f726bULL;
constexpr std::uint64_t kEvalStream = 0x6576616cULL;

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(what, field);
}

}  // namespace

void validate_ppo_config(const PpoConfig& c) {
  require(c.clip_eps > 0.0 && c.clip_eps < 1.0, "clip_eps", "must lie in (0, 1)");
  require(c.discount > 0.0 && c.discount <= 1.0, "discount", "must lie in (0, 1]");
  require(c.gae_lambda >= 0.0 && c.gae_lambda <= 1.0, "gae_lambda", "must lie in [0, 1]");
  require(c.n_envs >= 1, "n_envs", "must be at least 1");
  require(c.rollout_steps >= c.n_envs, "rollout_steps", "must be at least n_envs");
  require(c.rollout_steps % c.n_envs == 0, "rollout_steps", "must be divisible by n_envs");
  require(c.epochs >= 1, "epochs", "must be at least 1");
  require(c.minibatch >= 1, "minibatch", "must be at least 1");
  require(c.lr > 0.0 && std::isfinite(c.lr), "lr", "must be positive");
  require(c.entropy_coef >= 0.0, "entropy_coef", "must be non-negative");
  require(c.value_coef >= 0.0, "value_coef", "must be non-negative");
  require(c.max_grad_norm >= 0.0, "max_grad_norm", "must be non-negative");
  require(c.reward_scale > 0.0, "reward_scale", "must be positive");
  require(c.max_steps >= 0, "max_steps", "must be non-negative");
  require(!c.hidden.empty(), "hidden", "needs at least one layer");
  for (int h : c.hidden) require(h >= 1, "hidden", "layer sizes must be positive");
  require(c.init_log_std >= nn::kLogStdMin && c.init_log_std <= nn::kLogStdMax, "init_log_std",
          "outside the log-std clamp range");
  require(c.eval_interval >= 1, "eval_interval", "must be positive");
  require(c.eval_episodes >= 1, "eval_episodes", "must be at least 1");
  require(c.convergence_window >= 1, "convergence_window", "must be positive");
  require(c.convergence_threshold > 0.0, "convergence_threshold", "must be positive");
  require(c.reward_floor > 0.0, "reward_floor", "must be positive");
  require(c.oscillation_threshold > 0.0, "oscillation_threshold", "must be positive");
  require(c.phase_window >= 2, "phase_window", "must be at least 2");
}

double evaluate_policy(RlEnv& env, const nn::ActorCritic& net, const nn::RunningMeanStd& obs_norm,
                       int episodes, std::uint64_t seed) {
  if (episodes < 1) throw ArgumentError("episodes must be at least 1");
  double total = 0.0;
  for (int k = 0; k < episodes; ++k) {
    Eigen::VectorXd obs = env.reset(splitmix64(seed + static_cast<std::uint64_t>(k)));
    while (true) {
      const EnvStep s = env.step(net.forward(obs_norm.normalize(obs)).mean);
      total += s.reward;
      if (s.terminated || s.truncated || s.failed) break;
      obs = s.obs;
    }
  }
  return total / episodes;
}

PpoTrainer::PpoTrainer(PpoConfig cfg, EnvFactory factory, std::uint64_t seed)
    : cfg_(std::move(cfg)), seed_(seed), update_rng_(splitmix64(seed ^ kUpdateStream)) {
  validate_ppo_config(cfg_);
  if (!factory) throw ArgumentError("environment factory is empty");
  workers_.reserve(cfg_.n_envs);
  for (int i = 0; i < cfg_.n_envs; ++i) {
    workers_.emplace_back(factory(i), splitmix64(seed ^ (kWorkerStream + i)));
  }
  eval_env_ = factory(cfg_.n_envs);
  if (!eval_env_) throw ArgumentError("factory returned no environment");
  const int obs_dim = eval_env_->obs_dim();
  const int act_dim = eval_env_->action_dim();
  for (const auto& w : workers_) {
    if (w.env->obs_dim() != obs_dim || w.env->action_dim() != act_dim) {
      throw ArgumentError("environments disagree on dimensions");
    }
  }
  nn::MlpShape shape{obs_dim, cfg_.hidden, act_dim, nn::Activation::kTanh};
  net_ = nn::ActorCritic::initialized(shape, splitmix64(seed ^ kNetStream), cfg_.init_log_std);
  obs_norm_ = nn::RunningMeanStd(obs_dim);
  adam_ = nn::AdamState::zeros(net_.param_count());
}

nn::Checkpoint PpoTrainer::checkpoint() const {
  nn::Checkpoint c{net_, obs_norm_, steps_, nlohmann::json::object()};
  c.metadata["seed"] = seed_;
  return c;
}

TrainResult PpoTrainer::train(const TrainerHooks& hooks) {
  TrainResult result;
  ConvergenceMonitor monitor;
  monitor.window = cfg_.convergence_window;
  monitor.threshold = cfg_.convergence_threshold;
  monitor.reward_floor = cfg_.reward_floor;

  const std::uint64_t eval_seed = splitmix64(seed_ ^ kEvalStream);
  const int per_env = cfg_.rollout_steps / cfg_.n_envs;
  long long next_eval = steps_ + cfg_.eval_interval;
  int update = 0;
  double return_sum = 0.0;
  int episodes = 0;
  int failures = 0;
  UpdateStats last_stats;

  while (steps_ < cfg_.max_steps) {
    const long long remaining = cfg_.max_steps - steps_;
    const int steps = static_cast<int>(
        std::min<long long>(per_env, (remaining + cfg_.n_envs - 1) / cfg_.n_envs));
    RolloutBuffer buf = collect_rollouts(workers_, PolicyView{net_, obs_norm_}, steps,
                                         cfg_.discount, cfg_.reward_scale);
    compute_advantages(buf, cfg_.discount, cfg_.gae_lambda);
    last_stats = ppo_update(net_, adam_, buf, cfg_, update_rng_);
    obs_norm_.update(buf.raw_obs);
    steps_ += buf.size();
    ++update;
    for (double r : buf.episode_returns) return_sum += r;
    episodes += static_cast<int>(buf.episode_returns.size());
    failures += buf.failures;

    if (steps_ >= next_eval || steps_ >= cfg_.max_steps) {
      MetricsRow row;
      row.step = steps_;
      row.update = update;
      row.eval_reward = evaluate_policy(*eval_env_, net_, obs_norm_, cfg_.eval_episodes, eval_seed);
      row.train_return =
          episodes > 0 ? return_sum / episodes : std::numeric_limits<double>::quiet_NaN();
      row.episodes = episodes;
      row.failures = failures;
      row.stats = last_stats;
      monitor.record(steps_, row.eval_reward);
      row.converged = monitor.converged();
      if (monitor.history.size() >= 2) {
        row.phase = classify_phase(monitor, cfg_.oscillation_threshold, cfg_.phase_window);
      }
      if (row.converged && result.converged_step < 0) result.converged_step = steps_;
      result.metrics.push_back(row);
      if (hooks.on_eval) hooks.on_eval(row, checkpoint());
      return_sum = 0.0;
      episodes = 0;
      failures = 0;
      while (next_eval <= steps_) next_eval += cfg_.eval_interval;
      if (cfg_.stop_on_convergence && row.converged) break;
    }
  }
  result.steps = steps_;
  result.checkpoint = checkpoint();
  return result;
}

}  // namespace tacgrasp::ppo
