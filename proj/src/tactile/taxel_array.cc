#include "tacgrasp/tactile/taxel_array.hpp"

#include <algorithm>
#include <cmath>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::tactile {

TaxelArray TaxelArray::grid(const TaxelLayout& layout, int pad_geom, const Pose& frame) {
  if (layout.rows < 1 || layout.cols < 1) throw ConfigError("taxel grid must be at least 1x1");
  TaxelArray array;
  array.rows = layout.rows;
  array.cols = layout.cols;
  array.pitch = layout.pitch;
  array.pad_geom = pad_geom;
  array.frame = frame;
  array.taxels.reserve(static_cast<std::size_t>(layout.rows) * layout.cols);
  for (int r = 0; r < layout.rows; ++r) {
    for (int c = 0; c < layout.cols; ++c) {
      Taxel t;
      t.spec.local_position = Vec3((c - 0.5 * (layout.cols - 1)) * layout.pitch,
                                   (r - 0.5 * (layout.rows - 1)) * layout.pitch,
                                   layout.surface_offset);
      t.spec.k = layout.k;
      t.spec.b = layout.b;
      t.spec.max_displacement = layout.max_displacement;
      t.spec.receptive_radius = layout.receptive_radius;
      t.spec.mass = layout.mass;
      array.taxels.push_back(t);
    }
  }
  validate_array(array);
  return array;
}

Eigen::MatrixXd TaxelArray::readings() const {
  Eigen::MatrixXd out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out(r, c) = at(r, c).state.force_reading;
  }
  return out;
}

void TaxelArray::reset_state() {
  for (Taxel& t : taxels) t.state = {};
}

void validate_array(const TaxelArray& array) {
  if (array.rows < 1 || array.cols < 1 ||
      array.taxels.size() != static_cast<std::size_t>(array.rows) * array.cols) {
    throw ConfigError("taxel count must equal rows * cols");
  }
  for (const Taxel& t : array.taxels) {
    const TaxelSpec& s = t.spec;
    if (!(s.max_displacement > 0.0) || !(s.k > 0.0) || !(s.b >= 0.0) ||
        !(s.receptive_radius > 0.0) || !(s.mass > 0.0)) {
      throw ConfigError("taxel requires k > 0, b >= 0, max_displacement > 0, "
                        "receptive_radius > 0, mass > 0");
    }
  }
}

std::vector<double> attribute_force(const TaxelArray& array, const Vec3& point_in_pad,
                                    double force) {
  std::vector<double> share(array.taxels.size(), 0.0);
  double total_weight = 0.0;
  for (std::size_t i = 0; i < array.taxels.size(); ++i) {
    const TaxelSpec& s = array.taxels[i].spec;
    const double dist = std::hypot(point_in_pad.x() - s.local_position.x(),
                                   point_in_pad.y() - s.local_position.y());
    if (dist > s.receptive_radius) continue;
    share[i] = 1.0 / std::max(dist, 1e-9);
    total_weight += share[i];
  }
  if (total_weight > 0.0) {
    for (double& w : share) w *= force / total_weight;
  }
  return share;
}

void update_taxels(TaxelArray& array, const physics::WorldState& world,
                   std::span<const physics::ContactPoint> contacts, double dt) {
  for (Taxel& t : array.taxels) t.state.applied_force = 0.0;
  if (!contacts.empty()) {
    const Pose pad = world.geom_pose(array.pad_geom) * array.frame;
    for (const physics::ContactPoint& c : contacts) {
      if (!c.involves(array.pad_geom)) {
        throw ConfigError("contact between geoms " + std::to_string(c.geom_a) + " and " +
                          std::to_string(c.geom_b) + " does not touch pad geom " +
                          std::to_string(array.pad_geom));
      }
      const std::vector<double> share =
          attribute_force(array, pad.inverse_transform(c.position), c.normal_force);
      for (std::size_t i = 0; i < share.size(); ++i) array.taxels[i].state.applied_force += share[i];
    }
  }

  const double d = kTaxelImpedance;
  for (Taxel& t : array.taxels) {
    const TaxelSpec& s = t.spec;
    TaxelState& st = t.state;
    // Implicit Euler on a1 = (1-d)*F/m - d*(b*v1 + k*r1)/m with
    // v1 = v0 + a1*dt and r1 = r0 + v1*dt.
    const double rhs = (1.0 - d) * st.applied_force / s.mass -
                       d / s.mass * (s.b * st.rate + s.k * (st.displacement + st.rate * dt));
    const double lhs = 1.0 + d / s.mass * (s.b * dt + s.k * dt * dt);
    const double accel = rhs / lhs;
    double rate = st.rate + accel * dt;
    double disp = st.displacement + rate * dt;
    if (disp >= s.max_displacement) {
      disp = s.max_displacement;
      rate = 0.0;
    } else if (disp <= 0.0) {
      disp = 0.0;
      rate = 0.0;
    }
    st.displacement = disp;
    st.rate = rate;
    st.force_reading = std::max(0.0, s.k * disp + s.b * rate);
  }
}

Eigen::MatrixXd downsample(const Eigen::MatrixXd& readings, int stride) {
  if (stride < 1) throw ArgumentError("downsample stride must be >= 1");
  const Eigen::Index rows = (readings.rows() + stride - 1) / stride;
  const Eigen::Index cols = (readings.cols() + stride - 1) / stride;
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = readings(r * stride, c * stride);
  }
  return out;
}

int tactile_observation_size(std::span<const TaxelArray> arrays, int stride) {
  if (stride < 1) throw ArgumentError("tactile stride must be >= 1");
  int size = 0;
  for (const TaxelArray& a : arrays) {
    size += ((a.rows + stride - 1) / stride) * ((a.cols + stride - 1) / stride);
  }
  return size;
}

Eigen::VectorXd tactile_observation(std::span<const TaxelArray> arrays, int stride) {
  Eigen::VectorXd out(tactile_observation_size(arrays, stride));
  Eigen::Index offset = 0;
  for (const TaxelArray& a : arrays) {
    const Eigen::MatrixXd grid = downsample(a.readings(), stride);
    for (Eigen::Index r = 0; r < grid.rows(); ++r) {
      for (Eigen::Index c = 0; c < grid.cols(); ++c) out[offset++] = grid(r, c);
    }
  }
  return out;
}

}  // namespace tacgrasp::tactile
