// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "vrcontour/brush.hpp"
#include "vrcontour/label_volume.hpp"
#include "vrcontour/session.hpp"
#include "vrcontour/volume.hpp"

// Synthetic phantoms with analytic reference masks, and scripted contouring
// sessions that stand in for a user working with 2D discs only (C2) or with
// 3D spheres followed by 2D refinement (C4).

namespace vrc {

struct Phantom {
  Volume volume;
  LabelVolume reference;
};

/// Axis-aligned box centered in an n^3 grid. The box spans
/// `half_fraction` of the extent on each side of the center; density 1
/// inside, 0 outside.
Phantom cube_phantom(int n, Vec3 spacing, double half_fraction = 0.25);

/// Ellipsoid centered in the grid with semi-axes `radii_mm`. Interior
/// densities fall off from 1 at the center to 0.5 at the surface; the
/// outside is 0. The reference mask holds voxels with
/// sum(((p - c) / r)^2) <= 1.
Phantom ellipsoid_phantom(Dims dims, Vec3 spacing, Vec3 radii_mm);

inline Phantom sphere_phantom(Dims dims, Vec3 spacing, double radius_mm) {
  return ellipsoid_phantom(dims, spacing, {radius_mm, radius_mm, radius_mm});
}

/// Center of the grid in mm.
Vec3 volume_center(const Volume& volume);

/// Disc strokes that turn `current` into `target` on one plane: a paint
/// stroke along every row run that is missing and an erase stroke along
/// every row run that is extra. Brushes are narrower than half a voxel so
/// each run touches only its own voxels.
std::vector<BrushStroke> refine_strokes(const Mask2D& current, const Mask2D& target);

/// Records a session while applying it to a working mask, so later steps
/// can react to what earlier ones produced.
class ScriptedSession {
 public:
  explicit ScriptedSession(const Volume& volume, double first_stroke_ms = 5000.0);

  void stroke(BrushStroke stroke);
  void interpolate(Axis axis, std::vector<int> keys);
  void refine(Axis axis, int index, const Mask2D& target);

  const LabelVolume& mask() const noexcept { return mask_; }
  /// Appends the end event and returns the log.
  SessionRecord finish();

 private:
  const Volume& volume_;
  LabelVolume mask_;
  SessionRecord record_;
  double clock_ms_;
};

/// Planes along `axis` that hold at least one reference voxel, ascending.
std::vector<int> nonempty_slices(const LabelVolume& mask, Axis axis);

/// Key planes: every `step`-th nonempty plane plus the last nonempty one.
std::vector<int> key_slices(const LabelVolume& mask, Axis axis, int step);

/// 2D-only workflow: trace the reference exactly on the key planes with disc
/// strokes, then interpolate between them.
SessionRecord c2_session(const Phantom& phantom, Axis axis = Axis::Transverse, int key_step = 4);

/// Mixed 3D/2D workflow: rough-in with sphere strokes along the structure, refine the
/// key planes with discs, interpolate, then refine the planes whose overlap
/// with the reference is still poor.
SessionRecord c4_session(const Phantom& phantom, Axis axis = Axis::Transverse, int key_step = 4);

/// A single sphere stroke at the grid center, used with sphere_phantom().
std::vector<BrushStroke> sphere_script(const Volume& volume, double radius_mm);

}  // namespace vrc
