// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "vrcontour/geometry.hpp"
#include "vrcontour/label_volume.hpp"
#include "vrcontour/volume.hpp"

namespace vrc {

enum class BrushTool { Disc2D, Sphere3D };
enum class BrushMode { Paint, Erase };

/// One pen-down..pen-up gesture. A Disc2D stroke lives on a single slice
/// (`axis`, `slice`) and its path is in that plane's (u, v) mm coordinates;
/// a Sphere3D stroke's path is in volume mm.
struct BrushStroke {
  BrushTool tool = BrushTool::Disc2D;
  BrushMode mode = BrushMode::Paint;
  double radius_mm = 1.0;
  Axis axis = Axis::Transverse;
  int slice = 0;
  std::vector<Vec2> plane_path;
  std::vector<Vec3> space_path;
  double timestamp_ms = 0.0;

  friend bool operator==(const BrushStroke&, const BrushStroke&) = default;
};

/// Throws InvalidArgument for a non-positive radius or an empty path.
void validate(const BrushStroke& stroke);

/// Sets (Paint) or clears (Erase) every voxel of plane `index` whose center
/// lies within `radius_mm` of `center` (plane mm). Other planes are untouched.
void paint_disc(LabelVolume& mask, const Volume& volume, Axis axis, int index, Vec2 center,
                double radius_mm, BrushMode mode);

/// Sets or clears every voxel whose center is within `radius_mm` of `center`,
/// measured in mm with the volume's spacing. Parts outside the grid are clipped.
void paint_sphere(LabelVolume& mask, const Volume& volume, Vec3 center, double radius_mm,
                  BrushMode mode);

/// Stamp centers for a path: every path point plus evenly spaced in-between
/// points so that consecutive stamps are at most radius/2 apart.
std::vector<Vec2> stamp_chain(std::span<const Vec2> path, double radius_mm);
std::vector<Vec3> stamp_chain(std::span<const Vec3> path, double radius_mm);

void apply_stroke(LabelVolume& mask, const Volume& volume, const BrushStroke& stroke);

}  // namespace vrc
