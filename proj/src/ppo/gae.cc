#include "tacgrasp/ppo/gae.hpp"

#include "tacgrasp/errors.hpp"

namespace tacgrasp::ppo {

AdvantageEstimate compute_gae(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                              const Eigen::VectorXd& dones, double last_value, double discount,
                              double lambda) {
  const Eigen::Index n = rewards.size();
  if (values.size() != n || dones.size() != n) {
    throw ArgumentError("rewards, values and dones must have equal length");
  }
  AdvantageEstimate out{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  double next_adv = 0.0;
  double next_value = last_value;
  for (Eigen::Index t = n - 1; t >= 0; --t) {
    const double live = 1.0 - dones[t];
    const double delta = rewards[t] + discount * next_value * live - values[t];
    next_adv = delta + discount * lambda * live * next_adv;
    out.advantages[t] = next_adv;
    next_value = values[t];
  }
  out.returns = out.advantages + values;
  return out;
}

}  // namespace tacgrasp::ppo
