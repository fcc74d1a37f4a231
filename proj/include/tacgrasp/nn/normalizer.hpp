#pragma once

#include <Eigen/Core>

namespace tacgrasp::nn {

// Running per-feature mean and variance (parallel-merge update), used to
// whiten observations before the network.
struct RunningMeanStd {
  Eigen::VectorXd mean;
  Eigen::VectorXd var;
  double count = 0.0;
  double clip = 10.0;

  explicit RunningMeanStd(Eigen::Index dim = 0)
      : mean(Eigen::VectorXd::Zero(dim)), var(Eigen::VectorXd::Ones(dim)) {}

  // batch: dim x n
  void update(const Eigen::MatrixXd& batch);
  Eigen::VectorXd normalize(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd normalize_batch(const Eigen::MatrixXd& x) const;
};

}  // namespace tacgrasp::nn
