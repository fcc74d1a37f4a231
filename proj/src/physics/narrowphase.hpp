#pragma once

// Internal narrow-phase routines. Signed-distance queries work in the shape's
// local frame; normals point out of the shape.

#include <vector>

#include "tacgrasp/physics/world.hpp"

namespace tacgrasp::physics::detail {

struct SurfaceQuery {
  double distance = 0.0;  // negative inside
  Vec3 normal = Vec3::UnitZ();
};

SurfaceQuery box_distance(const Box& box, const Vec3& p);
SurfaceQuery cylinder_distance(const Cylinder& cyl, const Vec3& p);
// Exact Euclidean distance via bisection on the closest-point multiplier.
SurfaceQuery ellipsoid_distance(const Ellipsoid& ell, const Vec3& p);

struct SegmentPair {
  Vec3 on_first;
  Vec3 on_second;
};
SegmentPair closest_points_segments(const Vec3& p0, const Vec3& p1,
                                    const Vec3& q0, const Vec3& q1);

// Appends the contacts between geoms i and j (i < j) to `out`.
void collide(const WorldState& world, int i, int j,
             std::vector<ContactPoint>& out);

}  // namespace tacgrasp::physics::detail
