#pragma once

// Actor-critic network: a policy trunk ending in the Gaussian mean, a value
// trunk ending in a scalar, and a state-independent log standard deviation.
// Both trunks share the hidden layer sizes. All parameters live in one flat
// vector so that optimizers and checkpoints treat them uniformly.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace tacgrasp::nn {

enum class Activation { kTanh, kIdentity };

struct MlpShape {
  int obs_dim = 0;
  std::vector<int> hidden = {128, 128};
  int action_dim = 0;
  Activation activation = Activation::kTanh;

  bool operator==(const MlpShape&) const = default;
};

inline constexpr double kLogStdMin = -5.0;
inline constexpr double kLogStdMax = 2.0;

struct DenseLayer {
  int in = 0;
  int out = 0;
  Eigen::Index offset = 0;  // weights (out x in, column-major), then bias (out)
};

struct PolicyOutput {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;
  double value = 0.0;
};

// Activations kept from a batched forward pass for backpropagation.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> policy;  // layer inputs, then the output
  std::vector<Eigen::MatrixXd> value;
  const Eigen::MatrixXd& mean() const { return policy.back(); }
  const Eigen::MatrixXd& values() const { return value.back(); }
};

// Loss gradients with respect to the network outputs of one batch.
struct OutputGradients {
  Eigen::MatrixXd d_mean;    // action_dim x batch
  Eigen::MatrixXd d_value;   // 1 x batch
  Eigen::VectorXd d_log_std; // action_dim
};

struct GradientBuffer {
  Eigen::VectorXd grad;
  int count = 0;  // number of accumulated backward passes

  void zero() {
    grad.setZero();
    count = 0;
  }
};

class ActorCritic {
 public:
  ActorCritic() = default;
  // All parameters zero, log_std included.
  explicit ActorCritic(MlpShape shape);
  // Orthogonal weights (gain sqrt(2) in hidden layers, 0.01 for the mean
  // head, 1 for the value head), zero biases, log_std = init_log_std.
  static ActorCritic initialized(MlpShape shape, std::uint64_t seed, double init_log_std = 0.0);

  const MlpShape& shape() const { return shape_; }
  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }
  Eigen::Index param_count() const { return params_.size(); }

  const std::vector<DenseLayer>& policy_layers() const { return policy_layers_; }
  const std::vector<DenseLayer>& value_layers() const { return value_layers_; }
  Eigen::Map<Eigen::MatrixXd> weight(const DenseLayer& l);
  Eigen::Map<const Eigen::MatrixXd> weight(const DenseLayer& l) const;
  Eigen::Map<Eigen::VectorXd> bias(const DenseLayer& l);
  Eigen::Map<const Eigen::VectorXd> bias(const DenseLayer& l) const;
  Eigen::Map<Eigen::VectorXd> log_std();
  Eigen::Map<const Eigen::VectorXd> log_std() const;

  // Throws ArgumentError when obs has the wrong length.
  PolicyOutput forward(const Eigen::VectorXd& obs) const;
  // obs: obs_dim x batch.
  ForwardCache forward_batch(const Eigen::MatrixXd& obs) const;
  // Exact gradient of a scalar loss given its output gradients.
  GradientBuffer backward(const ForwardCache& cache, const OutputGradients& grads) const;

  void clamp_log_std();
  GradientBuffer make_gradient_buffer() const;

 private:
  MlpShape shape_;
  std::vector<DenseLayer> policy_layers_;
  std::vector<DenseLayer> value_layers_;
  Eigen::Index log_std_offset_ = 0;
  Eigen::VectorXd params_;
};

}  // namespace tacgrasp::nn
