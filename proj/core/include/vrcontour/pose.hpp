// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vrcontour/geometry.hpp"

namespace vrc {

/// Rotation quaternion, w + xi + yj + zk.
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Quaternion identity() { return {}; }
  /// Rotation of `radians` about `axis` (need not be unit length).
  static Quaternion from_axis_angle(Vec3 axis, double radians);

  double norm() const;
  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  Vec3 rotate(Vec3 v) const;

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b);
  friend constexpr bool operator==(Quaternion, Quaternion) = default;
};

inline constexpr double kUnitQuaternionTolerance = 1e-6;

bool is_unit(const Quaternion& q);

/// Placement of the volume in the world. The volume rotates and scales about
/// its own center, then shifts by `translation`; the identity pose leaves
/// every voxel where the volume model puts it.
struct Pose {
  Vec3 translation;
  Quaternion rotation;
  double scale = 1.0;

  friend constexpr bool operator==(Pose, Pose) = default;
};

/// Throws InvalidArgument if the pose breaks its invariants.
void validate(const Pose& pose);

/// Volume-local mm -> world mm for a volume whose center is `pivot`.
Vec3 pose_to_world(const Pose& pose, Vec3 pivot, Vec3 local);
/// Inverse of pose_to_world.
Vec3 pose_to_local(const Pose& pose, Vec3 pivot, Vec3 world);

/// Midpoint of the shortest segment between two rays (parameters >= 0).
/// Throws ParallelRays when |dirA x dirB| < 1e-9.
Vec3 shortest_segment_midpoint(const Ray& a, const Ray& b);

/// Absolute mapping: the pose takes the anchor's orientation outright.
Pose apply_rotation(const Pose& pose, const Quaternion& anchor_rotation);

Pose set_translation(const Pose& pose, Vec3 target);

}  // namespace vrc
