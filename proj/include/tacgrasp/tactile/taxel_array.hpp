#pragma once

// Spring-damper taxel grids mounted on finger pads.
//
// Each taxel is a slide joint along the pad-frame z axis. Contact normal
// forces on the pad geom are shared among the taxels whose in-plane distance
// to the contact is within the receptive radius, weighted by inverse distance.
// The taxel then follows the soft-constraint law with a fixed impedance of 0.5,
// which makes its static deflection exactly F / k. The reading is
// k * displacement + b * rate, clamped at zero.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "tacgrasp/physics/contact.hpp"
#include "tacgrasp/physics/world.hpp"

namespace tacgrasp::tactile {

inline constexpr double kTaxelImpedance = 0.5;

struct TaxelSpec {
  Vec3 local_position = Vec3::Zero();  // pad frame; slides along pad z
  double k = 500.0;
  double b = 1.0;
  double max_displacement = 0.02;
  double receptive_radius = 0.003;
  double mass = 1e-3;
};

struct TaxelState {
  double displacement = 0.0;
  double rate = 0.0;
  double applied_force = 0.0;  // attributed during the last update
  double force_reading = 0.0;
};

struct Taxel {
  TaxelSpec spec;
  TaxelState state;
};

struct TaxelLayout {
  int rows = 8;
  int cols = 8;
  double pitch = 0.002;
  double k = 500.0;
  double b = 1.0;
  double max_displacement = 0.02;
  double receptive_radius = 0.003;
  double mass = 1e-3;
  double surface_offset = 0.0;  // pad-frame z of the taxel plane
};

struct TaxelArray {
  int rows = 0;
  int cols = 0;
  double pitch = 0.0;
  int pad_geom = -1;
  Pose frame;  // pad frame relative to the pad geom
  std::vector<Taxel> taxels;  // row-major

  static TaxelArray grid(const TaxelLayout& layout, int pad_geom, const Pose& frame = {});

  Taxel& at(int row, int col) { return taxels[row * cols + col]; }
  const Taxel& at(int row, int col) const { return taxels[row * cols + col]; }
  Eigen::MatrixXd readings() const;
  void reset_state();
};

void validate_array(const TaxelArray& array);

// Inverse-distance split of `force` over taxels within their receptive radius
// of `point_in_pad` (in-plane distance). All zeros when none is in range.
std::vector<double> attribute_force(const TaxelArray& array, const Vec3& point_in_pad,
                                    double force);

// Advances every taxel by dt under the normal forces of `contacts`, which must
// all involve the array's pad geom (ConfigError otherwise).
void update_taxels(TaxelArray& array, const physics::WorldState& world,
                   std::span<const physics::ContactPoint> contacts, double dt);

// Point-samples rows and columns 0, stride, 2*stride, ...
Eigen::MatrixXd downsample(const Eigen::MatrixXd& readings, int stride);

// Downsampled grids concatenated in array order, each row-major. Length is
// sum over arrays of ceil(rows/stride) * ceil(cols/stride).
Eigen::VectorXd tactile_observation(std::span<const TaxelArray> arrays, int stride);
int tactile_observation_size(std::span<const TaxelArray> arrays, int stride);

}  // namespace tacgrasp::tactile
