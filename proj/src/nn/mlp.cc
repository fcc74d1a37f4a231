#include "tacgrasp/nn/mlp.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/QR>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::nn {

namespace {

std::vector<DenseLayer> plan(int in, const std::vector<int>& hidden, int out, Eigen::Index& offset) {
  std::vector<DenseLayer> layers;
  int prev = in;
  auto add = [&](int n) {
    layers.push_back({prev, n, offset});
    offset += static_cast<Eigen::Index>(prev) * n + n;
    prev = n;
  };
  for (int h : hidden) add(h);
  add(out);
  return layers;
}

Eigen::MatrixXd apply(Activation act, const Eigen::MatrixXd& z) {
  return act == Activation::kTanh ? Eigen::MatrixXd(z.array().tanh()) : z;
}

std::vector<Eigen::MatrixXd> run(const ActorCritic& net, const std::vector<DenseLayer>& layers,
                                 const Eigen::MatrixXd& x) {
  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(layers.size() + 1);
  acts.push_back(x);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    Eigen::MatrixXd z = net.weight(layers[i]) * acts.back();
    z.colwise() += net.bias(layers[i]);
    const bool hidden = i + 1 < layers.size();
    acts.push_back(hidden ? apply(net.shape().activation, z) : z);
  }
  return acts;
}

void backprop(const std::vector<DenseLayer>& layers, const ActorCritic& net,
              const std::vector<Eigen::MatrixXd>& acts, Eigen::MatrixXd delta,
              Eigen::VectorXd& grad) {
  for (int i = static_cast<int>(layers.size()) - 1; i >= 0; --i) {
    const DenseLayer& l = layers[i];
    Eigen::Map<Eigen::MatrixXd>(grad.data() + l.offset, l.out, l.in) += delta * acts[i].transpose();
    Eigen::Map<Eigen::VectorXd>(grad.data() + l.offset + static_cast<Eigen::Index>(l.out) * l.in,
                                l.out) += delta.rowwise().sum();
    if (i == 0) break;
    Eigen::MatrixXd back = net.weight(l).transpose() * delta;
    if (net.shape().activation == Activation::kTanh) {
      back.array() *= 1.0 - acts[i].array().square();
    }
    delta = std::move(back);
  }
}

void orthogonal(Eigen::Map<Eigen::MatrixXd> w, double gain, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index rows = w.rows(), cols = w.cols();
  const bool tall = rows >= cols;
  Eigen::MatrixXd a(tall ? rows : cols, tall ? cols : rows);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
  const Eigen::VectorXd d = qr.matrixQR().diagonal();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (d[j] < 0) q.col(j) = -q.col(j);
  }
  w = gain * (tall ? q : Eigen::MatrixXd(q.transpose()));
}

}  // namespace

ActorCritic::ActorCritic(MlpShape shape) : shape_(std::move(shape)) {
  if (shape_.obs_dim < 1 || shape_.action_dim < 1) {
    throw ArgumentError("network needs positive input and action sizes");
  }
  for (int h : shape_.hidden) {
    if (h < 1) throw ArgumentError("hidden layer sizes must be positive");
  }
  Eigen::Index offset = 0;
  policy_layers_ = plan(shape_.obs_dim, shape_.hidden, shape_.action_dim, offset);
  value_layers_ = plan(shape_.obs_dim, shape_.hidden, 1, offset);
  log_std_offset_ = offset;
  params_ = Eigen::VectorXd::Zero(offset + shape_.action_dim);
}

ActorCritic ActorCritic::initialized(MlpShape shape, std::uint64_t seed, double init_log_std) {
  ActorCritic net(std::move(shape));
  std::mt19937_64 rng(seed);
  const double hidden_gain = std::sqrt(2.0);
  for (std::size_t i = 0; i < net.policy_layers_.size(); ++i) {
    const bool last = i + 1 == net.policy_layers_.size();
    orthogonal(net.weight(net.policy_layers_[i]), last ? 0.01 : hidden_gain, rng);
  }
  for (std::size_t i = 0; i < net.value_layers_.size(); ++i) {
    const bool last = i + 1 == net.value_layers_.size();
    orthogonal(net.weight(net.value_layers_[i]), last ? 1.0 : hidden_gain, rng);
  }
  net.log_std().setConstant(init_log_std);
  return net;
}

Eigen::Map<Eigen::MatrixXd> ActorCritic::weight(const DenseLayer& l) {
  return {params_.data() + l.offset, l.out, l.in};
}
Eigen::Map<const Eigen::MatrixXd> ActorCritic::weight(const DenseLayer& l) const {
  return {params_.data() + l.offset, l.out, l.in};
}
Eigen::Map<Eigen::VectorXd> ActorCritic::bias(const DenseLayer& l) {
  return {params_.data() + l.offset + static_cast<Eigen::Index>(l.out) * l.in, l.out};
}
Eigen::Map<const Eigen::VectorXd> ActorCritic::bias(const DenseLayer& l) const {
  return {params_.data() + l.offset + static_cast<Eigen::Index>(l.out) * l.in, l.out};
}
Eigen::Map<Eigen::VectorXd> ActorCritic::log_std() {
  return {params_.data() + log_std_offset_, shape_.action_dim};
}
Eigen::Map<const Eigen::VectorXd> ActorCritic::log_std() const {
  return {params_.data() + log_std_offset_, shape_.action_dim};
}

PolicyOutput ActorCritic::forward(const Eigen::VectorXd& obs) const {
  if (obs.size() != shape_.obs_dim) {
    throw ArgumentError("observation has " + std::to_string(obs.size()) +
                        " entries, network expects " + std::to_string(shape_.obs_dim));
  }
  const ForwardCache cache = forward_batch(obs);
  return {cache.mean().col(0), log_std().array().exp(), cache.values()(0, 0)};
}

ForwardCache ActorCritic::forward_batch(const Eigen::MatrixXd& obs) const {
  if (obs.rows() != shape_.obs_dim) {
    throw ArgumentError("observation batch has " + std::to_string(obs.rows()) +
                        " rows, network expects " + std::to_string(shape_.obs_dim));
  }
  return {run(*this, policy_layers_, obs), run(*this, value_layers_, obs)};
}

GradientBuffer ActorCritic::backward(const ForwardCache& cache, const OutputGradients& g) const {
  GradientBuffer out = make_gradient_buffer();
  backprop(policy_layers_, *this, cache.policy, g.d_mean, out.grad);
  backprop(value_layers_, *this, cache.value, g.d_value, out.grad);
  if (g.d_log_std.size() == shape_.action_dim) {
    out.grad.segment(log_std_offset_, shape_.action_dim) += g.d_log_std;
  }
  out.count = 1;
  return out;
}

void ActorCritic::clamp_log_std() {
  auto s = log_std();
  s = s.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
}

GradientBuffer ActorCritic::make_gradient_buffer() const {
  return {Eigen::VectorXd::Zero(params_.size()), 0};
}

}  // namespace tacgrasp::nn
