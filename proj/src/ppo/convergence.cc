#include "tacgrasp/ppo/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::ppo {

void ConvergenceMonitor::record(long long step, double mean_reward) {
  if (!history.empty() && step < history.back().step) {
    throw ArgumentError("evaluation steps must not decrease");
  }
  history.push_back({step, mean_reward});
}

double ConvergenceMonitor::max_relative_change() const {
  if (history.size() < 2) return -1.0;
  const long long newest = history.back().step;
  if (newest - history.front().step < window) return -1.0;
  std::size_t anchor = 0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (history[i].step <= newest - window) anchor = i;
  }
  const double ref = history[anchor].mean_reward;
  const double scale = std::max(std::abs(ref), reward_floor);
  double worst = 0.0;
  for (std::size_t i = anchor + 1; i < history.size(); ++i) {
    worst = std::max(worst, std::abs(history[i].mean_reward - ref) / scale);
  }
  return worst;
}

bool ConvergenceMonitor::converged() const {
  const double change = max_relative_change();
  return change >= 0.0 && change < threshold;
}

std::string phase_name(TrainingPhase p) {
  switch (p) {
    case TrainingPhase::kExplorationOscillation: return "exploration";
    case TrainingPhase::kPolicyOptimization: return "optimization";
    case TrainingPhase::kPlateau: return "plateau";
  }
  return "unknown";
}

TrainingPhase classify_phase(const ConvergenceMonitor& monitor, double oscillation_threshold,
                             int window) {
  if (window < 2) throw ArgumentError("phase window must be at least 2");
  const auto& h = monitor.history;
  if (h.size() < 2) throw ArgumentError("phase classification needs two evaluations");
  if (monitor.converged()) return TrainingPhase::kPlateau;
  const std::size_t n = std::min<std::size_t>(h.size(), static_cast<std::size_t>(window));
  double mean = 0.0;
  for (std::size_t i = h.size() - n; i < h.size(); ++i) mean += h[i].mean_reward;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = h.size() - n; i < h.size(); ++i) {
    var += (h[i].mean_reward - mean) * (h[i].mean_reward - mean);
  }
  const double sd = std::sqrt(var / static_cast<double>(n));
  const double rel = sd / std::max(std::abs(mean), monitor.reward_floor);
  return rel > oscillation_threshold ? TrainingPhase::kExplorationOscillation
                                     : TrainingPhase::kPolicyOptimization;
}

}  // namespace tacgrasp::ppo
