// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/contours.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>

namespace vrc {

double signed_area(const Polygon& polygon) {
  const auto& v = polygon.vertices;
  double twice = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) twice += v[i].x * v[i + 1].y - v[i + 1].x * v[i].y;
  return twice / 2.0;
}

namespace {

// Lattice points on a doubled grid: voxel (i, j) is (2i, 2j), the midpoint
// between two neighbors is the sum of their coordinates.
struct Half {
  int x;
  int y;
};

struct Segment {
  Half from;
  Half to;
};

}  // namespace

std::vector<Polygon> extract_contours(const Mask2D& mask, Vec2 spacing) {
  const int w = mask.width;
  const int h = mask.height;
  const auto inside = [&](int u, int v) {
    return u >= 0 && v >= 0 && u < w && v < h && mask.at(u, v) != 0;
  };
  // Doubled coordinates range over [-2, 2w] x [-2, 2h].
  const auto key = [&](Half p) {
    return static_cast<std::int64_t>(p.y + 2) * (2 * static_cast<std::int64_t>(w) + 6) + (p.x + 2);
  };

  std::vector<Segment> segments;
  std::unordered_map<std::int64_t, std::size_t> by_start;

  // Cells span corner (i, j) to (i + 1, j + 1); the one-cell border of empty
  // space around the grid closes every loop.
  for (int j = -1; j < h; ++j) {
    for (int i = -1; i < w; ++i) {
      // Corners counter-clockwise from bottom-left; edge e joins corner e to e + 1.
      const std::array<Half, 4> corner{{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
      std::array<bool, 4> in{};
      int count = 0;
      for (int k = 0; k < 4; ++k) {
        in[k] = inside(corner[k].x, corner[k].y);
        count += in[k] ? 1 : 0;
      }
      if (count == 0 || count == 4) continue;

      const auto midpoint = [&](int e) {
        const Half& a = corner[e];
        const Half& b = corner[(e + 1) % 4];
        return Half{a.x + b.x, a.y + b.y};
      };
      for (int e = 0; e < 4; ++e) {
        if (!(in[e] && !in[(e + 1) % 4])) continue;
        // Leaving the set region across edge e; re-enter across the nearest
        // preceding edge. Walking this way keeps the set region on the left.
        for (int back = 1; back < 4; ++back) {
          const int f = (e - back + 4) % 4;
          if (!in[f] && in[(f + 1) % 4]) {
            by_start.emplace(key(midpoint(e)), segments.size());
            segments.push_back({midpoint(e), midpoint(f)});
            break;
          }
        }
      }
    }
  }

  std::vector<Polygon> polygons;
  std::vector<bool> used(segments.size(), false);
  const auto to_mm = [&](Half p) { return Vec2{p.x * 0.5 * spacing.x, p.y * 0.5 * spacing.y}; };
  for (std::size_t first = 0; first < segments.size(); ++first) {
    if (used[first]) continue;
    Polygon polygon;
    std::size_t current = first;
    while (!used[current]) {
      used[current] = true;
      polygon.vertices.push_back(to_mm(segments[current].from));
      const auto next = by_start.find(key(segments[current].to));
      if (next == by_start.end()) break;
      current = next->second;
    }
    polygon.vertices.push_back(polygon.vertices.front());
    polygons.push_back(std::move(polygon));
  }
  return polygons;
}

ContourSet contour_set(const LabelVolume& mask, Axis axis, Vec3 spacing) {
  ContourSet set;
  set.axis = axis;
  const int n = mask.dims()[plane_axes(axis).w];
  for (int index = 0; index < n; ++index) {
    const Mask2D plane = mask_slice(mask, axis, index, spacing);
    auto polygons = extract_contours(plane, plane.spacing);
    if (!polygons.empty()) set.per_slice.emplace(index, std::move(polygons));
  }
  return set;
}

}  // namespace vrc
