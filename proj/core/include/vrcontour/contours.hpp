// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <vector>

#include "vrcontour/geometry.hpp"
#include "vrcontour/label_volume.hpp"

namespace vrc {

/// Closed polygon in plane mm; the last vertex repeats the first.
struct Polygon {
  std::vector<Vec2> vertices;
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// Shoelace area: positive for counter-clockwise (outer) loops, negative for
/// clockwise (hole) loops.
double signed_area(const Polygon& polygon);
inline bool is_hole(const Polygon& polygon) { return signed_area(polygon) < 0.0; }

/// Marching-squares boundaries at the 0.5 level between set and unset voxel
/// centers. Vertices sit on midpoints between neighboring centers; diagonal
/// saddles keep the set cells apart, so foreground is 4-connected. Outer
/// loops run counter-clockwise, holes clockwise.
std::vector<Polygon> extract_contours(const Mask2D& mask, Vec2 spacing);

struct ContourSet {
  Axis axis = Axis::Transverse;
  std::map<int, std::vector<Polygon>> per_slice;
  friend bool operator==(const ContourSet&, const ContourSet&) = default;
};

/// Contours for every slice along `axis` that has at least one set voxel.
ContourSet contour_set(const LabelVolume& mask, Axis axis, Vec3 spacing);

}  // namespace vrc
