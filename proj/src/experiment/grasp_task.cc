#include "tacgrasp/experiment/grasp_task.hpp"

#include <memory>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::experiment {

grasp::Action action_from_output(const Eigen::VectorXd& output, const Eigen::VectorXd& limits) {
  if (output.size() != limits.size()) {
    throw ArgumentError("policy output has " + std::to_string(output.size()) +
                        " entries, expected " + std::to_string(limits.size()));
  }
  const Eigen::VectorXd flat = output.cwiseMax(-1.0).cwiseMin(1.0).cwiseProduct(limits);
  return grasp::Action::from_flat(flat, static_cast<int>(limits.size()) - 6);
}

GraspTaskEnv::GraspTaskEnv(grasp::TaskConfig task, std::vector<grasp::ShapeKind> shapes)
    : env_(std::move(task)), shapes_(std::move(shapes)), limits_(env_.increment_limits()) {
  if (shapes_.empty()) throw ConfigError("needs at least one shape", "shapes");
}

Eigen::VectorXd GraspTaskEnv::reset(std::uint64_t seed) {
  const auto shape = shapes_[seed % shapes_.size()];
  return env_.reset(shape, env_.config().noise, seed).flat();
}

ppo::EnvStep GraspTaskEnv::step(const Eigen::VectorXd& action) {
  ppo::EnvStep out;
  try {
    const grasp::StepResult r = env_.step(action_from_output(action, limits_));
    out.obs = r.observation.flat();
    out.reward = r.reward.total;
    out.truncated = r.done;
  } catch (const SimulationDiverged&) {
    out.obs = Eigen::VectorXd::Zero(obs_dim());
    out.failed = true;
  }
  return out;
}

grasp::Policy network_policy(const nn::Checkpoint& ckpt, const grasp::TaskConfig& task) {
  const grasp::GraspEnv probe(task);
  const int obs_dim = probe.observation_size();
  const auto& shape = ckpt.net.shape();
  if (shape.obs_dim != obs_dim || shape.action_dim != probe.action_size()) {
    throw ConfigError("checkpoint expects " + std::to_string(shape.obs_dim) +
                          " observations and " + std::to_string(shape.action_dim) +
                          " actions; the task provides " + std::to_string(obs_dim) + " and " +
                          std::to_string(probe.action_size()),
                      "checkpoint");
  }
  auto state = std::make_shared<const nn::Checkpoint>(ckpt);
  const Eigen::VectorXd limits = probe.increment_limits();
  return [state, limits](const grasp::Observation& obs) {
    const Eigen::VectorXd x = state->obs_norm.normalize(obs.flat());
    return action_from_output(state->net.forward(x).mean, limits);
  };
}

}  // namespace tacgrasp::experiment
