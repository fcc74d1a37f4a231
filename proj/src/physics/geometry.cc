#include "tacgrasp/physics/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::physics {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string shape_name(const Shape& shape) {
  return std::visit(Overloaded{[](const Sphere&) { return "sphere"; },
                               [](const Capsule&) { return "capsule"; },
                               [](const Ellipsoid&) { return "ellipsoid"; },
                               [](const Box&) { return "box"; },
                               [](const Cylinder&) { return "cylinder"; },
                               [](const Plane&) { return "plane"; }},
                    shape);
}

double shape_volume(const Shape& shape) {
  using std::numbers::pi;
  return std::visit(
      Overloaded{
          [](const Sphere& s) { return 4.0 / 3.0 * pi * std::pow(s.radius, 3); },
          [](const Capsule& c) {
            return pi * c.radius * c.radius * 2.0 * c.half_length +
                   4.0 / 3.0 * pi * std::pow(c.radius, 3);
          },
          [](const Ellipsoid& e) { return 4.0 / 3.0 * pi * e.radii.prod(); },
          [](const Box& b) { return 8.0 * b.half_extents.prod(); },
          [](const Cylinder& c) {
            return pi * c.radius * c.radius * 2.0 * c.half_length;
          },
          [](const Plane&) { return std::numeric_limits<double>::infinity(); }},
      shape);
}

double bounding_radius(const Shape& shape) {
  return std::visit(
      Overloaded{[](const Sphere& s) { return s.radius; },
                 [](const Capsule& c) { return c.radius + c.half_length; },
                 [](const Ellipsoid& e) { return e.radii.maxCoeff(); },
                 [](const Box& b) { return b.half_extents.norm(); },
                 [](const Cylinder& c) { return std::hypot(c.radius, c.half_length); },
                 [](const Plane&) { return std::numeric_limits<double>::infinity(); }},
      shape);
}

void validate_geom(const GeomSpec& geom) {
  const auto fail = [&](const std::string& what) {
    throw ModelError("geom '" + geom.name + "': " + what);
  };
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  std::visit(Overloaded{[&](const Sphere& s) {
                          if (!positive(s.radius)) fail("radius must be positive");
                        },
                        [&](const Capsule& c) {
                          if (!positive(c.radius) || !positive(c.half_length))
                            fail("capsule dimensions must be positive");
                        },
                        [&](const Ellipsoid& e) {
                          for (int i = 0; i < 3; ++i)
                            if (!positive(e.radii[i])) fail("ellipsoid radii must be positive");
                        },
                        [&](const Box& b) {
                          for (int i = 0; i < 3; ++i)
                            if (!positive(b.half_extents[i])) fail("box extents must be positive");
                        },
                        [&](const Cylinder& c) {
                          if (!positive(c.radius) || !positive(c.half_length))
                            fail("cylinder dimensions must be positive");
                        },
                        [](const Plane&) {}},
             geom.shape);
  if (!(geom.mu1 >= 0.0) || !std::isfinite(geom.mu1)) fail("mu1 must be >= 0");
  if (std::abs(geom.local_pose.orientation.norm() - 1.0) > 1e-9) {
    fail("local orientation is not unit length");
  }
}

bool collision_enabled(const GeomSpec& a, const GeomSpec& b) {
  return (a.contype & b.conaffinity) != 0 || (b.contype & a.conaffinity) != 0;
}

}  // namespace tacgrasp::physics
