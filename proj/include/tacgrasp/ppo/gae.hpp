#pragma once

#include <Eigen/Core>

namespace tacgrasp::ppo {

struct AdvantageEstimate {
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
};

// Generalized advantage estimation over one environment's segment:
//   delta_t = r_t + discount * V_{t+1} * (1 - done_t) - V_t
//   A_t     = delta_t + discount * lambda * (1 - done_t) * A_{t+1}
// with V_T = last_value. done_t marks the end of an episode at step t.
AdvantageEstimate compute_gae(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                              const Eigen::VectorXd& dones, double last_value, double discount,
                              double lambda);

}  // namespace tacgrasp::ppo
