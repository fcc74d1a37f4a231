#pragma once

#include <stdexcept>
#include <string>

namespace tacgrasp {

// Raised when a model description violates a physical invariant
// (non-positive dimensions, indefinite inertia, out-of-range impedance).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for task/scene/experiment configuration problems. `field` names the
// offending entry when it is known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, std::string field = {})
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        message_(message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }
  // The message without the field prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::string field_;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedPairError : public std::runtime_error {
 public:
  UnsupportedPairError(const std::string& shape_a, const std::string& shape_b)
      : std::runtime_error("unsupported narrow-phase pair: " + shape_a + " / " +
                           shape_b) {}
};

// A body state component became NaN or infinite.
class SimulationDiverged : public std::runtime_error {
 public:
  explicit SimulationDiverged(int body_id)
      : std::runtime_error("simulation diverged at body " +
                           std::to_string(body_id)),
        body_id_(body_id) {}
  int body_id() const noexcept { return body_id_; }

 private:
  int body_id_;
};

// Non-finite loss or gradient during a policy update.
class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tacgrasp
