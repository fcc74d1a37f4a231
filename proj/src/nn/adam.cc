#include "tacgrasp/nn/adam.hpp"

#include <cmath>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::nn {

void adam_update(Eigen::VectorXd& params, GradientBuffer& grads, AdamState& state, double lr,
                 const AdamConfig& cfg) {
  if (grads.grad.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw ArgumentError("optimizer buffers do not match the parameter vector");
  }
  ++state.step;
  state.m = cfg.beta1 * state.m + (1.0 - cfg.beta1) * grads.grad;
  state.v = cfg.beta2 * state.v + (1.0 - cfg.beta2) * grads.grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  params.array() -= lr * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + cfg.eps);
  grads.zero();
}

}  // namespace tacgrasp::nn
