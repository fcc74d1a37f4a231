#include "tacgrasp/ppo/ppo_update.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/nn/gaussian.hpp"

namespace tacgrasp::ppo {

double clipped_surrogate(double ratio, double advantage, double eps) {
  const double clipped = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
  return std::min(ratio * advantage, clipped * advantage);
}

MinibatchLoss minibatch_loss(const nn::ActorCritic& net, const RolloutBuffer& buffer,
                             const std::vector<int>& indices, const PpoConfig& cfg) {
  const int B = static_cast<int>(indices.size());
  if (B == 0) throw ArgumentError("empty minibatch");
  const int A = net.shape().action_dim;
  Eigen::MatrixXd obs(buffer.obs.rows(), B);
  for (int j = 0; j < B; ++j) obs.col(j) = buffer.obs.col(indices[j]);

  const nn::ForwardCache cache = net.forward_batch(obs);
  const Eigen::VectorXd log_std = net.log_std();
  const Eigen::ArrayXd inv_var = (-2.0 * log_std.array()).exp();
  const double log_norm = log_std.sum() + 0.5 * A * std::log(2.0 * M_PI);

  nn::OutputGradients g{Eigen::MatrixXd::Zero(A, B), Eigen::MatrixXd::Zero(1, B),
                        Eigen::VectorXd::Zero(A)};
  MinibatchLoss out;
  double surrogate = 0.0, value_loss = 0.0, clipped = 0.0, kl = 0.0;
  for (int j = 0; j < B; ++j) {
    const int i = indices[j];
    const Eigen::ArrayXd diff = buffer.actions.col(i).array() - cache.mean().col(j).array();
    const Eigen::ArrayXd z2 = diff.square() * inv_var;
    const double logp = -0.5 * z2.sum() - log_norm;
    const double log_ratio = logp - buffer.log_probs[i];
    const double ratio = std::exp(log_ratio);
    const double adv = buffer.advantages[i];
    surrogate += clipped_surrogate(ratio, adv, cfg.clip_eps);
    if (std::abs(ratio - 1.0) > cfg.clip_eps) clipped += 1.0;
    kl += (ratio - 1.0) - log_ratio;

    // The unclipped branch carries the gradient when it is the minimum.
    const bool active = ratio * adv <= std::clamp(ratio, 1.0 - cfg.clip_eps, 1.0 + cfg.clip_eps) * adv;
    if (active) {
      const double d_logp = -adv * ratio / B;
      g.d_mean.col(j) = d_logp * (diff * inv_var).matrix();
      g.d_log_std += d_logp * (z2 - 1.0).matrix();
    }
    const double v_err = cache.values()(0, j) - buffer.returns[i];
    value_loss += v_err * v_err;
    g.d_value(0, j) = cfg.value_coef * 2.0 * v_err / B;
  }
  const double ent = nn::entropy(log_std);
  g.d_log_std.array() -= cfg.entropy_coef;

  out.stats.policy_loss = -surrogate / B;
  out.stats.value_loss = value_loss / B;
  out.stats.entropy = ent;
  out.stats.clip_fraction = clipped / B;
  out.stats.approx_kl = kl / B;
  out.total = out.stats.policy_loss + cfg.value_coef * out.stats.value_loss -
              cfg.entropy_coef * ent;
  out.grad = net.backward(cache, g);
  return out;
}

UpdateStats ppo_update(nn::ActorCritic& net, nn::AdamState& adam, RolloutBuffer& buffer,
                       const PpoConfig& cfg, std::mt19937_64& rng) {
  const int n = buffer.size();
  if (buffer.advantages.size() != n) throw ArgumentError("advantages not computed");
  const double mean = buffer.advantages.mean();
  const double sd = std::sqrt((buffer.advantages.array() - mean).square().mean());
  buffer.advantages = (buffer.advantages.array() - mean) / (sd + 1e-8);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const nn::AdamConfig adam_cfg;
  UpdateStats sum;
  int batches = 0;
  double last_norm = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int start = 0; start < n; start += cfg.minibatch) {
      const int end = std::min(n, start + cfg.minibatch);
      std::vector<int> idx(order.begin() + start, order.begin() + end);
      MinibatchLoss mb = minibatch_loss(net, buffer, idx, cfg);
      const double norm = mb.grad.grad.norm();
      if (!std::isfinite(mb.total) || !std::isfinite(norm)) {
        std::ostringstream msg;
        msg << "non-finite loss at epoch " << epoch << ", minibatch " << start / cfg.minibatch
            << " (policy " << mb.stats.policy_loss << ", value " << mb.stats.value_loss
            << ", grad norm " << norm << ")";
        throw TrainingDiverged(msg.str());
      }
      if (cfg.max_grad_norm > 0.0 && norm > cfg.max_grad_norm) {
        mb.grad.grad *= cfg.max_grad_norm / norm;
      }
      nn::adam_update(net.params(), mb.grad, adam, cfg.lr, adam_cfg);
      net.clamp_log_std();
      last_norm = norm;
      sum.policy_loss += mb.stats.policy_loss;
      sum.value_loss += mb.stats.value_loss;
      sum.entropy += mb.stats.entropy;
      sum.clip_fraction += mb.stats.clip_fraction;
      sum.approx_kl += mb.stats.approx_kl;
      ++batches;
    }
  }
  if (batches > 0) {
    sum.policy_loss /= batches;
    sum.value_loss /= batches;
    sum.entropy /= batches;
    sum.clip_fraction /= batches;
    sum.approx_kl /= batches;
  }
  sum.grad_norm = last_norm;
  return sum;
}

}  // namespace tacgrasp::ppo
