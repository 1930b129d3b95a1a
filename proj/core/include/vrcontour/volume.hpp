// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "vrcontour/geometry.hpp"

namespace vrc {

/// Voxel counts per axis.
struct Dims {
  int nx = 1;
  int ny = 1;
  int nz = 1;

  constexpr int operator[](int i) const { return i == 0 ? nx : (i == 1 ? ny : nz); }
  constexpr std::size_t voxel_count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
           static_cast<std::size_t>(nz);
  }
  constexpr std::size_t index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(nx) *
               (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny) * static_cast<std::size_t>(z));
  }
  constexpr bool contains(int x, int y, int z) const {
    return x >= 0 && y >= 0 && z >= 0 && x < nx && y < ny && z < nz;
  }
  friend constexpr bool operator==(Dims, Dims) = default;
};

/// The three cutting-plane orientations. Each one fixes a volume axis:
/// Transverse fixes z, Sagittal fixes x, Coronal fixes y.
enum class Axis { Transverse, Sagittal, Coronal };

/// Volume axes for a cutting plane: `u` and `v` span the plane, `w` is fixed.
/// Transverse: (x, y | z), Sagittal: (y, z | x), Coronal: (x, z | y).
struct PlaneAxes {
  int u;
  int v;
  int w;
};

constexpr PlaneAxes plane_axes(Axis axis) {
  switch (axis) {
    case Axis::Transverse: return {0, 1, 2};
    case Axis::Sagittal: return {1, 2, 0};
    case Axis::Coronal: return {0, 2, 1};
  }
  return {0, 1, 2};
}

/// Accepts "z"/"transverse", "x"/"sagittal", "y"/"coronal" (case-insensitive).
Axis parse_axis(std::string_view text);
std::string_view axis_letter(Axis axis);

struct RawRange {
  double min = 0.0;
  double max = 1.0;
  friend constexpr bool operator==(RawRange, RawRange) = default;
};

/// Normalized scalar volume. Immutable once built; voxel (0,0,0) sits at the
/// world origin and voxel centers lie on the lattice `index * spacing` (mm).
class Volume {
 public:
  Volume(Dims dims, Vec3 spacing, std::vector<float> densities, RawRange raw_range = {});

  const Dims& dims() const noexcept { return dims_; }
  const Vec3& spacing() const noexcept { return spacing_; }
  const RawRange& raw_range() const noexcept { return raw_range_; }
  std::span<const float> densities() const noexcept { return densities_; }

  float at(int x, int y, int z) const noexcept { return densities_[dims_.index(x, y, z)]; }

  /// World-space size of the lattice, (n - 1) * spacing per axis.
  Vec3 extent_mm() const noexcept;

  friend bool operator==(const Volume&, const Volume&) = default;

 private:
  Dims dims_;
  Vec3 spacing_;
  std::vector<float> densities_;
  RawRange raw_range_;
};

/// Rescales raw values to [0, 1] with (v - min) / (max - min), keeping the
/// original grid resolution. Throws ConstantVolume when every value is equal.
Volume normalize_minmax(std::span<const double> raw, Dims dims, Vec3 spacing);

/// Density bounds for the "fine" range view, 0 <= lo < hi <= 1.
class DensityWindow {
 public:
  DensityWindow() = default;
  DensityWindow(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  friend constexpr bool operator==(DensityWindow, DensityWindow) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 1.0;
};

inline double apply_window(double d, const DensityWindow& w) {
  const double t = (d - w.lo()) / (w.hi() - w.lo());
  return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
}

/// A 2D grid of values on an axis-aligned plane. `width` runs along the
/// plane's u axis and `height` along v (see plane_axes()).
template <typename T>
struct PlaneGrid {
  Axis axis = Axis::Transverse;
  int index = 0;
  int width = 0;
  int height = 0;
  Vec2 spacing{1.0, 1.0};
  std::vector<T> values;

  T at(int u, int v) const { return values[static_cast<std::size_t>(v) * width + u]; }
  T& at(int u, int v) { return values[static_cast<std::size_t>(v) * width + u]; }
  friend bool operator==(const PlaneGrid&, const PlaneGrid&) = default;
};

using Slice2D = PlaneGrid<float>;

/// Exact densities of the plane `index` along `axis`; throws IndexOutOfRange.
Slice2D extract_slice(const Volume& volume, Axis axis, int index);

/// Throws IndexOutOfRange unless 0 <= index < dims along the axis.
void check_slice_index(const Dims& dims, Axis axis, int index);

inline Vec3 world_to_voxel(const Volume& volume, Vec3 p) {
  return hadamard_div(p, volume.spacing());
}
inline Vec3 voxel_to_world(const Volume& volume, Vec3 c) {
  return hadamard(c, volume.spacing());
}

/// Trilinear density at fractional voxel coordinates, passed through the
/// window. Anything outside [0, n - 1] on some axis reads as 0.
double sample_trilinear(const Volume& volume, Vec3 voxel, const DensityWindow& window);

}  // namespace vrc
