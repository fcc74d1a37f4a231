#include "tacgrasp/ppo/rollout.hpp"

#include <exception>
#include <thread>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/nn/gaussian.hpp"
#include "tacgrasp/ppo/gae.hpp"

namespace tacgrasp::ppo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

EnvWorker::EnvWorker(std::unique_ptr<RlEnv> e, std::uint64_t seed)
    : env(std::move(e)), rng(splitmix64(seed ^ 0x5bd1e995ULL)), seed_base(splitmix64(seed)) {
  if (!env) throw ArgumentError("worker needs an environment");
}

void EnvWorker::start_episode() {
  obs = env->reset(splitmix64(seed_base + episodes));
  ++episodes;
  episode_return = 0.0;
}

namespace {

struct WorkerOutput {
  std::vector<double> episode_returns;
  int failures = 0;
  std::exception_ptr error;
};

void run_worker(EnvWorker& w, int e, const PolicyView& policy, int steps, double discount,
                double reward_scale, RolloutBuffer& buf, WorkerOutput& out) {
  try {
    if (w.obs.size() == 0) w.start_episode();
    for (int t = 0; t < steps; ++t) {
      const int i = e * steps + t;
      const Eigen::VectorXd obs_n = policy.obs_norm.normalize(w.obs);
      const nn::PolicyOutput pi = policy.net.forward(obs_n);
      const Eigen::VectorXd action = nn::sample(pi.mean, pi.std, w.rng);
      buf.raw_obs.col(i) = w.obs;
      buf.obs.col(i) = obs_n;
      buf.actions.col(i) = action;
      buf.log_probs[i] = nn::log_prob(pi.mean, pi.std, action);
      buf.values[i] = pi.value;

      const EnvStep s = w.env->step(action);
      w.episode_return += s.reward;
      double r = reward_scale * s.reward;
      const bool end = s.terminated || s.truncated || s.failed;
      if (s.truncated && !s.terminated && !s.failed) {
        r += discount * policy.net.forward(policy.obs_norm.normalize(s.obs)).value;
      }
      buf.rewards[i] = r;
      buf.dones[i] = end ? 1.0 : 0.0;
      if (s.failed) ++out.failures;
      if (end) {
        out.episode_returns.push_back(w.episode_return);
        w.start_episode();
      } else {
        w.obs = s.obs;
      }
    }
    buf.last_values[e] = policy.net.forward(policy.obs_norm.normalize(w.obs)).value;
  } catch (...) {
    out.error = std::current_exception();
  }
}

}  // namespace

RolloutBuffer collect_rollouts(std::vector<EnvWorker>& workers, const PolicyView& policy,
                               int steps_per_env, double discount, double reward_scale,
                               bool parallel) {
  if (workers.empty()) throw ArgumentError("no environments");
  if (steps_per_env <= 0) throw ArgumentError("steps_per_env must be positive");
  const int obs_dim = policy.net.shape().obs_dim;
  const int act_dim = policy.net.shape().action_dim;
  RolloutBuffer buf;
  buf.n_envs = static_cast<int>(workers.size());
  buf.steps_per_env = steps_per_env;
  const int n = buf.size();
  buf.obs.resize(obs_dim, n);
  buf.raw_obs.resize(obs_dim, n);
  buf.actions.resize(act_dim, n);
  buf.log_probs.resize(n);
  buf.rewards.resize(n);
  buf.values.resize(n);
  buf.dones.resize(n);
  buf.last_values = Eigen::VectorXd::Zero(buf.n_envs);

  std::vector<WorkerOutput> outputs(workers.size());
  if (parallel && workers.size() > 1) {
    std::vector<std::thread> threads;
    threads.reserve(workers.size());
    for (int e = 0; e < buf.n_envs; ++e) {
      threads.emplace_back(run_worker, std::ref(workers[e]), e, std::cref(policy), steps_per_env,
                           discount, reward_scale, std::ref(buf), std::ref(outputs[e]));
    }
    for (auto& t : threads) t.join();
  } else {
    for (int e = 0; e < buf.n_envs; ++e) {
      run_worker(workers[e], e, policy, steps_per_env, discount, reward_scale, buf, outputs[e]);
    }
  }
  for (auto& o : outputs) {
    if (o.error) std::rethrow_exception(o.error);
    buf.episode_returns.insert(buf.episode_returns.end(), o.episode_returns.begin(),
                               o.episode_returns.end());
    buf.failures += o.failures;
  }
  return buf;
}

void compute_advantages(RolloutBuffer& buffer, double discount, double lambda) {
  const int T = buffer.steps_per_env;
  buffer.advantages.resize(buffer.size());
  buffer.returns.resize(buffer.size());
  for (int e = 0; e < buffer.n_envs; ++e) {
    const auto est = compute_gae(buffer.rewards.segment(e * T, T), buffer.values.segment(e * T, T),
                                 buffer.dones.segment(e * T, T), buffer.last_values[e], discount,
                                 lambda);
    buffer.advantages.segment(e * T, T) = est.advantages;
    buffer.returns.segment(e * T, T) = est.returns;
  }
}

}  // namespace tacgrasp::ppo
