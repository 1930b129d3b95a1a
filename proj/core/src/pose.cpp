// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/pose.hpp"

#include <algorithm>
#include <cmath>

#include "vrcontour/error.hpp"

namespace vrc {

Quaternion Quaternion::from_axis_angle(Vec3 axis, double radians) {
  const Vec3 n = normalized(axis);
  const double s = std::sin(radians / 2.0);
  return {std::cos(radians / 2.0), n.x * s, n.y * s, n.z * s};
}

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Vec3 Quaternion::rotate(Vec3 v) const {
  // v' = v + 2w (q x v) + 2 q x (q x v)
  const Vec3 q{x, y, z};
  const Vec3 t = 2.0 * cross(q, v);
  return v + w * t + cross(q, t);
}

bool is_unit(const Quaternion& q) { return std::abs(q.norm() - 1.0) <= kUnitQuaternionTolerance; }

void validate(const Pose& pose) {
  if (!is_unit(pose.rotation)) {
    throw Error(ErrorCode::NonUnitQuaternion, "pose rotation is not a unit quaternion", "rotation");
  }
  if (!(pose.scale > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "pose scale must be positive", "scale");
  }
}

Vec3 pose_to_world(const Pose& pose, Vec3 pivot, Vec3 local) {
  return pivot + pose.translation + pose.rotation.rotate((local - pivot) * pose.scale);
}

Vec3 pose_to_local(const Pose& pose, Vec3 pivot, Vec3 world) {
  return pivot + pose.rotation.conjugate().rotate(world - pivot - pose.translation) / pose.scale;
}

Vec3 shortest_segment_midpoint(const Ray& a, const Ray& b) {
  const Vec3 r = a.origin - b.origin;
  const double dd = dot(a.dir, b.dir);
  const double ea = dot(a.dir, a.dir);
  const double eb = dot(b.dir, b.dir);
  const double da = dot(a.dir, r);
  const double db = dot(b.dir, r);

  if (norm(cross(a.dir, b.dir)) < 1e-9) {
    throw Error(ErrorCode::ParallelRays, "rays are parallel; no unique closest approach", "dir");
  }

  // Unconstrained closest approach of the supporting lines.
  const double denom = ea * eb - dd * dd;
  double t = (dd * db - eb * da) / denom;
  double s = (ea * db - dd * da) / denom;

  // Restrict to the quadrant t, s >= 0. The distance is a convex quadratic,
  // so when a parameter leaves the quadrant the minimum lies on that edge.
  if (t < 0.0 || s < 0.0) {
    // Best point on edge t = 0 and on edge s = 0; keep the closer.
    const double s_edge = std::max(0.0, db / eb);
    const double t_edge = std::max(0.0, -da / ea);
    const auto dist2 = [&](double tt, double ss) {
      const Vec3 d = (a.origin + a.dir * tt) - (b.origin + b.dir * ss);
      return dot(d, d);
    };
    if (dist2(0.0, s_edge) <= dist2(t_edge, 0.0)) {
      t = 0.0;
      s = s_edge;
    } else {
      t = t_edge;
      s = 0.0;
    }
  }
  const Vec3 pa = a.origin + a.dir * t;
  const Vec3 pb = b.origin + b.dir * s;
  return (pa + pb) * 0.5;
}

Pose apply_rotation(const Pose& pose, const Quaternion& anchor_rotation) {
  if (!is_unit(anchor_rotation)) {
    throw Error(ErrorCode::NonUnitQuaternion, "anchor rotation is not a unit quaternion",
                "rotation");
  }
  Pose out = pose;
  out.rotation = anchor_rotation;
  return out;
}

Pose set_translation(const Pose& pose, Vec3 target) {
  Pose out = pose;
  out.translation = target;
  return out;
}

}  // namespace vrc
