#include "tacgrasp/ppo/point_reach.hpp"

#include <algorithm>
#include <random>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::ppo {

PointReachEnv::PointReachEnv(PointReachConfig cfg) : cfg_(cfg) {
  if (cfg_.half_extent <= 0.0 || cfg_.v_max <= 0.0 || cfg_.horizon < 1 || cfg_.substeps < 1 ||
      cfg_.dt <= 0.0 || cfg_.reward_radius <= 0.0) {
    throw ConfigError("point reach parameters must be positive");
  }
  world_.gravity.setZero();
  world_.dt = cfg_.dt;
  physics::RigidBodyState point;
  point.name = "point";
  point.kind = physics::BodyKind::kKinematic;
  world_.add_body(point);
}

Eigen::Vector2d PointReachEnv::position() const { return world_.bodies[0].position.head<2>(); }

Eigen::VectorXd PointReachEnv::observe() const {
  Eigen::VectorXd obs(4);
  const Eigen::Vector2d p = position();
  obs << p, goal_ - p;
  return obs;
}

Eigen::VectorXd PointReachEnv::reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-cfg_.half_extent, cfg_.half_extent);
  auto& body = world_.bodies[0];
  body.position = Vec3(u(rng), u(rng), 0.0);
  body.linear_velocity.setZero();
  goal_ = Eigen::Vector2d(u(rng), u(rng));
  world_.time = 0.0;
  t_ = 0;
  return observe();
}

EnvStep PointReachEnv::step(const Eigen::VectorXd& action) {
  if (action.size() != 2) throw ArgumentError("point reach action has 2 entries");
  if (t_ >= cfg_.horizon) throw std::logic_error("episode finished; call reset");
  auto& body = world_.bodies[0];
  const Eigen::Vector2d v = cfg_.v_max * action.cwiseMax(-1.0).cwiseMin(1.0);
  for (int k = 0; k < cfg_.substeps; ++k) {
    body.linear_velocity = Vec3(v.x(), v.y(), 0.0);
    physics::advance(world_);
  }
  ++t_;
  EnvStep s;
  s.obs = observe();
  const double dist = (goal_ - position()).norm();
  s.reward = std::max(0.0, 1.0 - dist / cfg_.reward_radius);
  s.truncated = t_ >= cfg_.horizon;
  return s;
}

Eigen::VectorXd point_reach_oracle(const Eigen::VectorXd& obs, const PointReachConfig& cfg) {
  const double reach = cfg.v_max * cfg.dt * cfg.substeps;
  return (obs.tail<2>() / reach).cwiseMax(-1.0).cwiseMin(1.0);
}

double point_reach_optimal_return(const PointReachConfig& cfg, int episodes, std::uint64_t seed) {
  PointReachEnv env(cfg);
  double total = 0.0;
  for (int k = 0; k < episodes; ++k) {
    Eigen::VectorXd obs = env.reset(splitmix64(seed + static_cast<std::uint64_t>(k)));
    while (true) {
      const EnvStep s = env.step(point_reach_oracle(obs, cfg));
      total += s.reward;
      if (s.truncated) break;
      obs = s.obs;
    }
  }
  return total / episodes;
}

}  // namespace tacgrasp::ppo
