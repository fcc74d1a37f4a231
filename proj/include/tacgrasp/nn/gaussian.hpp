#pragma once

// Diagonal Gaussian policy distribution.

#include <random>

#include <Eigen/Core>

namespace tacgrasp::nn {

// Log density summed over dimensions.
double log_prob(const Eigen::VectorXd& mean, const Eigen::VectorXd& std,
                const Eigen::VectorXd& action);

// sum(log_std + 0.5 * ln(2 pi e))
double entropy(const Eigen::VectorXd& log_std);

Eigen::VectorXd sample(const Eigen::VectorXd& mean, const Eigen::VectorXd& std,
                       std::mt19937_64& rng);

}  // namespace tacgrasp::nn
