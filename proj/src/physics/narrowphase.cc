#include "narrowphase.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "tacgrasp/errors.hpp"

namespace tacgrasp::physics::detail {

namespace {

// Golden-section search resolves the closest segment parameter to this
// fraction of the segment length; well under the 1e-6 m contact tolerance for
// finger-sized capsules.
constexpr double kSegmentTolerance = 1e-9;
constexpr int kEllipsoidBisections = 200;

Vec3 any_perpendicular(const Vec3& v) {
  const Vec3 axis = std::abs(v.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return v.cross(axis).normalized();
}

struct Swept {
  Vec3 p0;
  Vec3 p1;
  double radius;
};

Swept as_swept(const Shape& shape, const Pose& pose) {
  if (const auto* s = std::get_if<Sphere>(&shape)) {
    return {pose.position, pose.position, s->radius};
  }
  const auto& c = std::get<Capsule>(shape);
  const Vec3 axis = pose.orientation * Vec3(0.0, 0.0, c.half_length);
  return {pose.position - axis, pose.position + axis, c.radius};
}

bool is_swept(const Shape& s) {
  return std::holds_alternative<Sphere>(s) || std::holds_alternative<Capsule>(s);
}

bool has_distance(const Shape& s) {
  return std::holds_alternative<Box>(s) || std::holds_alternative<Cylinder>(s) ||
         std::holds_alternative<Ellipsoid>(s);
}

SurfaceQuery shape_distance(const Shape& shape, const Vec3& p) {
  if (const auto* b = std::get_if<Box>(&shape)) return box_distance(*b, p);
  if (const auto* c = std::get_if<Cylinder>(&shape)) return cylinder_distance(*c, p);
  return ellipsoid_distance(std::get<Ellipsoid>(shape), p);
}

ContactPoint make_contact(int a, int b, const Vec3& position, const Vec3& normal,
                          double penetration) {
  ContactPoint c;
  c.geom_a = a;
  c.geom_b = b;
  c.position = position;
  c.normal = normal;
  c.penetration = penetration;
  return c;
}

void swept_swept(const WorldState& w, int a, int b, std::vector<ContactPoint>& out) {
  const Swept sa = as_swept(w.geoms[a].shape, w.geom_pose(a));
  const Swept sb = as_swept(w.geoms[b].shape, w.geom_pose(b));
  const SegmentPair cp = closest_points_segments(sa.p0, sa.p1, sb.p0, sb.p1);
  const Vec3 delta = cp.on_first - cp.on_second;
  const double dist = delta.norm();
  const double pen = sa.radius + sb.radius - dist;
  if (pen <= 0.0) return;
  Vec3 n = Vec3::UnitZ();
  if (dist > 1e-12) {
    n = delta / dist;
  } else {
    // coincident axes: separate perpendicular to the first segment
    const Vec3 axis = sa.p1 - sa.p0;
    n = axis.norm() > 1e-12 ? any_perpendicular(axis.normalized()) : Vec3::UnitZ();
  }
  out.push_back(make_contact(a, b, cp.on_second + n * (sb.radius - 0.5 * pen), n, pen));
}

void swept_vs_distance(const WorldState& w, int a, int b,
                       std::vector<ContactPoint>& out) {
  const Swept sa = as_swept(w.geoms[a].shape, w.geom_pose(a));
  const Pose pb = w.geom_pose(b);
  const Shape& shape_b = w.geoms[b].shape;
  const Vec3 l0 = pb.inverse_transform(sa.p0);
  const Vec3 l1 = pb.inverse_transform(sa.p1);

  const auto eval = [&](double t) { return shape_distance(shape_b, l0 + t * (l1 - l0)).distance; };
  double t_best = 0.0;
  if ((l1 - l0).norm() > 0.0) {
    // signed distance to a convex set is convex along a segment
    constexpr double inv_phi = 0.6180339887498949;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = eval(x1), f2 = eval(x2);
    while (hi - lo > kSegmentTolerance) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = eval(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = eval(x2);
      }
    }
    t_best = 0.5 * (lo + hi);
    double f_best = eval(t_best);
    for (double t : {0.0, 1.0}) {
      const double f = eval(t);
      if (f < f_best) {
        f_best = f;
        t_best = t;
      }
    }
  }
  const Vec3 local = l0 + t_best * (l1 - l0);
  const SurfaceQuery q = shape_distance(shape_b, local);
  const double pen = sa.radius - q.distance;
  if (pen <= 0.0) return;
  const Vec3 n = pb.orientation * q.normal;
  const Vec3 centre = pb.transform(local);
  out.push_back(make_contact(a, b, centre - n * (0.5 * (sa.radius + q.distance)), n, pen));
}

void against_plane(const WorldState& w, int a, int plane, std::vector<ContactPoint>& out) {
  const Pose pp = w.geom_pose(plane);
  const Vec3 n = pp.orientation * Vec3::UnitZ();
  const double offset = n.dot(pp.position);
  const Pose pa = w.geom_pose(a);
  const Shape& shape = w.geoms[a].shape;

  // `deepest` is the point of geom a furthest below the plane
  const auto emit = [&](const Vec3& deepest) {
    const double pen = offset - n.dot(deepest);
    if (pen > 0.0) out.push_back(make_contact(a, plane, deepest + 0.5 * pen * n, n, pen));
  };

  if (is_swept(shape)) {
    const Swept s = as_swept(shape, pa);
    emit(s.p0 - s.radius * n);
    if (std::holds_alternative<Capsule>(shape)) emit(s.p1 - s.radius * n);
    return;
  }
  if (const auto* box = std::get_if<Box>(&shape)) {
    for (int corner = 0; corner < 8; ++corner) {
      const Vec3 sign((corner & 1) ? 1.0 : -1.0, (corner & 2) ? 1.0 : -1.0,
                      (corner & 4) ? 1.0 : -1.0);
      emit(pa.transform(sign.cwiseProduct(box->half_extents)));
    }
    return;
  }
  if (const auto* cyl = std::get_if<Cylinder>(&shape)) {
    const Vec3 axis = pa.orientation * Vec3::UnitZ();
    Vec3 radial = -(n - n.dot(axis) * axis);
    radial = radial.norm() > 1e-9 ? radial.normalized() : any_perpendicular(axis);
    const Vec3 tangent = axis.cross(radial);
    const std::array<Vec3, 4> rim = {radial, tangent, -radial, -tangent};
    for (double side : {-1.0, 1.0}) {
      const Vec3 cap = pa.position + side * cyl->half_length * axis;
      for (const Vec3& dir : rim) emit(cap + cyl->radius * dir);
    }
    return;
  }
  if (const auto* ell = std::get_if<Ellipsoid>(&shape)) {
    // support point in direction -n
    const Vec3 dir_local = pa.orientation.conjugate() * (-n);
    const Vec3 scaled = ell->radii.cwiseProduct(dir_local);
    const Vec3 support = ell->radii.cwiseProduct(scaled) / scaled.norm();
    emit(pa.transform(support));
    return;
  }
  throw UnsupportedPairError(shape_name(shape), "plane");
}

}  // namespace

SurfaceQuery box_distance(const Box& box, const Vec3& p) {
  const Vec3& h = box.half_extents;
  const Vec3 q = p.cwiseAbs() - h;
  SurfaceQuery out;
  if ((q.array() > 0.0).any()) {
    const Vec3 closest = p.cwiseMax(-h).cwiseMin(h);
    const Vec3 delta = p - closest;
    out.distance = delta.norm();
    out.normal = delta / out.distance;
    return out;
  }
  int axis = 0;
  q.maxCoeff(&axis);
  out.distance = q[axis];
  out.normal = Vec3::Zero();
  out.normal[axis] = p[axis] >= 0.0 ? 1.0 : -1.0;
  return out;
}

SurfaceQuery cylinder_distance(const Cylinder& cyl, const Vec3& p) {
  const double rho = std::hypot(p.x(), p.y());
  const Vec3 radial = rho > 1e-15 ? Vec3(p.x() / rho, p.y() / rho, 0.0) : Vec3::UnitX();
  const Vec3 axial(0.0, 0.0, p.z() >= 0.0 ? 1.0 : -1.0);
  const double dr = rho - cyl.radius;
  const double dz = std::abs(p.z()) - cyl.half_length;
  SurfaceQuery out;
  if (dr > 0.0 && dz > 0.0) {
    out.distance = std::hypot(dr, dz);
    out.normal = (dr * radial + dz * axial) / out.distance;
  } else if (dr > 0.0) {
    out.distance = dr;
    out.normal = radial;
  } else if (dz > 0.0) {
    out.distance = dz;
    out.normal = axial;
  } else if (dr > dz) {
    out.distance = dr;
    out.normal = radial;
  } else {
    out.distance = dz;
    out.normal = axial;
  }
  return out;
}

SurfaceQuery ellipsoid_distance(const Ellipsoid& ell, const Vec3& p_in) {
  const Vec3& a = ell.radii;
  const Vec3 a2 = a.cwiseProduct(a);
  Vec3 p = p_in;
  int min_axis = 0;
  a.minCoeff(&min_axis);
  // keep the multiplier's pole strictly outside the bracket
  const double eps = 1e-10 * a[min_axis];
  if (std::abs(p[min_axis]) < eps) p[min_axis] = std::copysign(eps, p[min_axis]);

  const double level = p.cwiseQuotient(a).squaredNorm();
  const auto f = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double v = a[i] * p[i] / (t + a2[i]);
      sum += v * v;
    }
    return sum - 1.0;
  };
  double lo, hi;
  if (level >= 1.0) {
    lo = 0.0;
    hi = a.maxCoeff() * p.norm() + a2.maxCoeff();
  } else {
    lo = -a2[min_axis];
    hi = 0.0;
  }
  for (int it = 0; it < kEllipsoidBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  Vec3 closest;
  for (int i = 0; i < 3; ++i) closest[i] = a2[i] * p[i] / (t + a2[i]);
  SurfaceQuery out;
  const double dist = (p_in - closest).norm();
  out.distance = level >= 1.0 ? dist : -dist;
  out.normal = closest.cwiseQuotient(a2).normalized();
  return out;
}

SegmentPair closest_points_segments(const Vec3& p0, const Vec3& p1, const Vec3& q0,
                                    const Vec3& q1) {
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const Vec3 r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  constexpr double kEps = 1e-18;
  double s = 0.0, t = 0.0;
  if (a <= kEps && e <= kEps) return {p0, q0};
  if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > kEps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return {p0 + s * d1, q0 + t * d2};
}

void collide(const WorldState& world, int i, int j, std::vector<ContactPoint>& out) {
  const Shape& si = world.geoms[i].shape;
  const Shape& sj = world.geoms[j].shape;
  const bool plane_i = std::holds_alternative<Plane>(si);
  const bool plane_j = std::holds_alternative<Plane>(sj);
  if (plane_i && plane_j) throw UnsupportedPairError("plane", "plane");
  if (plane_i) return against_plane(world, j, i, out);
  if (plane_j) return against_plane(world, i, j, out);
  // symmetric pairs: normal points into the later-listed geom
  if (is_swept(si) && is_swept(sj)) return swept_swept(world, j, i, out);
  if (is_swept(si) && has_distance(sj)) return swept_vs_distance(world, i, j, out);
  if (is_swept(sj) && has_distance(si)) return swept_vs_distance(world, j, i, out);
  throw UnsupportedPairError(shape_name(si), shape_name(sj));
}

}  // namespace tacgrasp::physics::detail
