#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include <Eigen/Core>

namespace tacgrasp::ppo {

struct EnvStep {
  Eigen::VectorXd obs;
  double reward = 0.0;
  bool terminated = false;  // no bootstrap
  bool truncated = false;   // time limit; bootstrap from obs
  bool failed = false;      // simulation failure; treated as terminal
};

// Continuous-control environment seen by the trainer. Actions are the raw
// policy samples; environments map them to their own ranges.
class RlEnv {
 public:
  virtual ~RlEnv() = default;
  virtual int obs_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual Eigen::VectorXd reset(std::uint64_t seed) = 0;
  virtual EnvStep step(const Eigen::VectorXd& action) = 0;
};

// Creates the environment for worker `index`; evaluation uses its own index.
using EnvFactory = std::function<std::unique_ptr<RlEnv>(int index)>;

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tacgrasp::ppo
