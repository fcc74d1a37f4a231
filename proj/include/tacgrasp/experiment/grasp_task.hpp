#pragma once

#include <vector>

#include "tacgrasp/grasp/episode.hpp"
#include "tacgrasp/grasp/grasp_env.hpp"
#include "tacgrasp/nn/checkpoint.hpp"
#include "tacgrasp/ppo/env.hpp"

namespace tacgrasp::experiment {

// Policy outputs are clipped to [-1, 1] and scaled by the increment limits.
grasp::Action action_from_output(const Eigen::VectorXd& output, const Eigen::VectorXd& limits);

// Grasping task seen by the trainer. Each episode picks its shape from the
// reset seed; the simulation diverging ends the episode as a failure.
class GraspTaskEnv final : public ppo::RlEnv {
 public:
  GraspTaskEnv(grasp::TaskConfig task, std::vector<grasp::ShapeKind> shapes);

  int obs_dim() const override { return env_.observation_size(); }
  int action_dim() const override { return env_.action_size(); }
  Eigen::VectorXd reset(std::uint64_t seed) override;
  ppo::EnvStep step(const Eigen::VectorXd& action) override;

  const grasp::GraspEnv& env() const { return env_; }

 private:
  grasp::GraspEnv env_;
  std::vector<grasp::ShapeKind> shapes_;
  Eigen::VectorXd limits_;
};

// Deterministic policy following the network mean. Throws ConfigError when
// the checkpoint does not match the task's observation or action size.
grasp::Policy network_policy(const nn::Checkpoint& ckpt, const grasp::TaskConfig& task);

}  // namespace tacgrasp::experiment
