#include "tacgrasp/nn/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace tacgrasp::nn {

namespace {
const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
}

double log_prob(const Eigen::VectorXd& mean, const Eigen::VectorXd& std,
                const Eigen::VectorXd& action) {
  const Eigen::ArrayXd z = (action - mean).array() / std.array();
  return (-0.5 * z.square() - std.array().log() - kHalfLog2Pi).sum();
}

double entropy(const Eigen::VectorXd& log_std) {
  return (log_std.array() + 0.5 + kHalfLog2Pi).sum();
}

Eigen::VectorXd sample(const Eigen::VectorXd& mean, const Eigen::VectorXd& std,
                       std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd out(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) out[i] = mean[i] + std[i] * normal(rng);
  return out;
}

}  // namespace tacgrasp::nn
