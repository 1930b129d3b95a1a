// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/brush.hpp"

#include <algorithm>
#include <cmath>

#include "vrcontour/error.hpp"

namespace vrc {

namespace {

// Index range [first, last] of lattice points k * spacing inside [lo, hi],
// clipped to [0, n - 1]. Clamping happens in floating point so far-away
// brushes cannot overflow the int conversion.
int first_index(double lo, double spacing, int n) {
  return static_cast<int>(std::clamp(std::floor(lo / spacing), 0.0, static_cast<double>(n)));
}
int last_index(double hi, double spacing, int n) {
  return static_cast<int>(std::clamp(std::ceil(hi / spacing), -1.0, static_cast<double>(n - 1)));
}

// Marks voxels of one plane whose (u, v) center offset from `center`
// satisfies du^2 + dv^2 <= radius_sq. A sphere is a stack of these.
void stamp_plane(LabelVolume& mask, const PlaneAxes& pa, int index, Vec2 center, Vec2 spacing,
                 double radius_sq, BrushMode mode) {
  if (radius_sq < 0.0) return;
  const Dims& dims = mask.dims();
  const double r = std::sqrt(radius_sq);
  const int u_lo = first_index(center.x - r, spacing.x, dims[pa.u]);
  const int u_hi = last_index(center.x + r, spacing.x, dims[pa.u]);
  const int v_lo = first_index(center.y - r, spacing.y, dims[pa.v]);
  const int v_hi = last_index(center.y + r, spacing.y, dims[pa.v]);
  const bool value = mode == BrushMode::Paint;

  int c[3];
  c[pa.w] = index;
  for (int v = v_lo; v <= v_hi; ++v) {
    const double dv = v * spacing.y - center.y;
    c[pa.v] = v;
    for (int u = u_lo; u <= u_hi; ++u) {
      const double du = u * spacing.x - center.x;
      if (du * du + dv * dv <= radius_sq) {
        c[pa.u] = u;
        mask.set(c[0], c[1], c[2], value);
      }
    }
  }
}

void check_radius(double radius_mm) {
  if (!(radius_mm > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "brush radius must be positive", "radius_mm");
  }
}

template <typename P>
std::vector<P> chain(std::span<const P> path, double radius_mm) {
  std::vector<P> stamps;
  if (path.empty()) return stamps;
  const double max_gap = radius_mm / 2.0;
  stamps.push_back(path.front());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const P a = path[i - 1];
    const P b = path[i];
    const double length = norm(b - a);
    if (!(length / max_gap < 1e7)) {
      throw Error(ErrorCode::InvalidArgument, "stroke segment too long for its brush radius", "path");
    }
    const int pieces = std::max(1, static_cast<int>(std::ceil(length / max_gap)));
    for (int k = 1; k < pieces; ++k) stamps.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
    stamps.push_back(b);
  }
  return stamps;
}

}  // namespace

void validate(const BrushStroke& stroke) {
  check_radius(stroke.radius_mm);
  const bool empty =
      stroke.tool == BrushTool::Disc2D ? stroke.plane_path.empty() : stroke.space_path.empty();
  if (empty) throw Error(ErrorCode::InvalidArgument, "stroke path is empty", "path");
}

void paint_disc(LabelVolume& mask, const Volume& volume, Axis axis, int index, Vec2 center,
                double radius_mm, BrushMode mode) {
  check_same_grid(mask, volume);
  check_radius(radius_mm);
  check_slice_index(mask.dims(), axis, index);
  const PlaneAxes pa = plane_axes(axis);
  const Vec2 spacing{volume.spacing()[pa.u], volume.spacing()[pa.v]};
  stamp_plane(mask, pa, index, center, spacing, radius_mm * radius_mm, mode);
}

void paint_sphere(LabelVolume& mask, const Volume& volume, Vec3 center, double radius_mm,
                  BrushMode mode) {
  check_same_grid(mask, volume);
  check_radius(radius_mm);
  const PlaneAxes pa = plane_axes(Axis::Transverse);
  const Vec3& s = volume.spacing();
  const int nz = mask.dims().nz;
  const int z_lo = first_index(center.z - radius_mm, s.z, nz);
  const int z_hi = last_index(center.z + radius_mm, s.z, nz);
  for (int z = z_lo; z <= z_hi; ++z) {
    const double dz = z * s.z - center.z;
    stamp_plane(mask, pa, z, {center.x, center.y}, {s.x, s.y}, radius_mm * radius_mm - dz * dz,
                mode);
  }
}

std::vector<Vec2> stamp_chain(std::span<const Vec2> path, double radius_mm) {
  return chain(path, radius_mm);
}

std::vector<Vec3> stamp_chain(std::span<const Vec3> path, double radius_mm) {
  return chain(path, radius_mm);
}

void apply_stroke(LabelVolume& mask, const Volume& volume, const BrushStroke& stroke) {
  validate(stroke);
  check_same_grid(mask, volume);
  if (stroke.tool == BrushTool::Disc2D) {
    check_slice_index(mask.dims(), stroke.axis, stroke.slice);
    for (const Vec2& c : stamp_chain(std::span<const Vec2>(stroke.plane_path), stroke.radius_mm)) {
      paint_disc(mask, volume, stroke.axis, stroke.slice, c, stroke.radius_mm, stroke.mode);
    }
  } else {
    for (const Vec3& c : stamp_chain(std::span<const Vec3>(stroke.space_path), stroke.radius_mm)) {
      paint_sphere(mask, volume, c, stroke.radius_mm, stroke.mode);
    }
  }
}

}  // namespace vrc
