#pragma once

#include <Eigen/Core>

#include "tacgrasp/nn/mlp.hpp"

namespace tacgrasp::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long long step = 0;

  static AdamState zeros(Eigen::Index n) {
    return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0};
  }
};

// One bias-corrected Adam step on `params`; `grads` is zeroed afterwards.
void adam_update(Eigen::VectorXd& params, GradientBuffer& grads, AdamState& state, double lr,
                 const AdamConfig& cfg = {});

}  // namespace tacgrasp::nn
