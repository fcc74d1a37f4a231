#include "tacgrasp/nn/normalizer.hpp"

#include "tacgrasp/errors.hpp"

namespace tacgrasp::nn {

namespace {
constexpr double kVarEps = 1e-8;
}

void RunningMeanStd::update(const Eigen::MatrixXd& batch) {
  if (batch.cols() == 0) return;
  if (batch.rows() != mean.size()) throw ArgumentError("normalizer dimension mismatch");
  const double n = static_cast<double>(batch.cols());
  const Eigen::VectorXd batch_mean = batch.rowwise().mean();
  const Eigen::VectorXd batch_var =
      (batch.colwise() - batch_mean).array().square().rowwise().sum() / n;
  const double total = count + n;
  const Eigen::VectorXd delta = batch_mean - mean;
  mean += delta * (n / total);
  const Eigen::VectorXd m2 =
      var * count + batch_var * n + delta.cwiseAbs2() * (count * n / total);
  var = m2 / total;
  count = total;
}

Eigen::VectorXd RunningMeanStd::normalize(const Eigen::VectorXd& x) const {
  if (x.size() != mean.size()) throw ArgumentError("normalizer dimension mismatch");
  return ((x - mean).array() / (var.array() + kVarEps).sqrt()).cwiseMax(-clip).cwiseMin(clip);
}

Eigen::MatrixXd RunningMeanStd::normalize_batch(const Eigen::MatrixXd& x) const {
  if (x.rows() != mean.size()) throw ArgumentError("normalizer dimension mismatch");
  const Eigen::ArrayXd inv = (var.array() + kVarEps).sqrt().inverse();
  Eigen::MatrixXd out = (x.colwise() - mean);
  out.array().colwise() *= inv;
  return out.cwiseMax(-clip).cwiseMin(clip);
}

}  // namespace tacgrasp::nn
