// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/volume.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "vrcontour/error.hpp"

namespace vrc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConstantVolume: return "ConstantVolume";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParallelRays: return "ParallelRays";
    case ErrorCode::NonUnitQuaternion: return "NonUnitQuaternion";
    case ErrorCode::NeedTwoKeys: return "NeedTwoKeys";
    case ErrorCode::UnsortedKeys: return "UnsortedKeys";
    case ErrorCode::NoStroke: return "NoStroke";
    case ErrorCode::NoSessionEnd: return "NoSessionEnd";
    case ErrorCode::NonIncreasingTime: return "NonIncreasingTime";
    case ErrorCode::MalformedEvent: return "MalformedEvent";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::VersionConflict: return "VersionConflict";
  }
  return "Unknown";
}

Axis parse_axis(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "z" || lower == "transverse" || lower == "axial") return Axis::Transverse;
  if (lower == "x" || lower == "sagittal") return Axis::Sagittal;
  if (lower == "y" || lower == "coronal") return Axis::Coronal;
  throw Error(ErrorCode::InvalidArgument, "unknown axis '" + std::string(text) + "'", "axis");
}

std::string_view axis_letter(Axis axis) {
  switch (axis) {
    case Axis::Transverse: return "z";
    case Axis::Sagittal: return "x";
    case Axis::Coronal: return "y";
  }
  return "z";
}

Volume::Volume(Dims dims, Vec3 spacing, std::vector<float> densities, RawRange raw_range)
    : dims_(dims), spacing_(spacing), densities_(std::move(densities)), raw_range_(raw_range) {
  if (dims_.nx < 1 || dims_.ny < 1 || dims_.nz < 1) {
    throw Error(ErrorCode::InvalidArgument, "volume dims must be >= 1", "dims");
  }
  if (!(spacing_.x > 0.0 && spacing_.y > 0.0 && spacing_.z > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "voxel spacing must be positive", "spacing_mm");
  }
  if (densities_.size() != dims_.voxel_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "density grid holds " + std::to_string(densities_.size()) + " values, dims need " +
                    std::to_string(dims_.voxel_count()),
                "dims");
  }
  for (float d : densities_) {
    if (!(d >= 0.0F && d <= 1.0F)) {
      throw Error(ErrorCode::InvalidArgument, "densities must lie in [0, 1]", "densities");
    }
  }
}

Vec3 Volume::extent_mm() const noexcept {
  return {(dims_.nx - 1) * spacing_.x, (dims_.ny - 1) * spacing_.y, (dims_.nz - 1) * spacing_.z};
}

Volume normalize_minmax(std::span<const double> raw, Dims dims, Vec3 spacing) {
  if (raw.size() != dims.voxel_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "raw grid holds " + std::to_string(raw.size()) + " values, dims need " +
                    std::to_string(dims.voxel_count()),
                "dims");
  }
  const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) {
    throw Error(ErrorCode::ConstantVolume, "min-max normalization of a constant volume", "raw");
  }
  const double scale = hi - lo;
  std::vector<float> densities(raw.size());
  std::transform(raw.begin(), raw.end(), densities.begin(), [&](double v) {
    return static_cast<float>(std::clamp((v - lo) / scale, 0.0, 1.0));
  });
  return Volume(dims, spacing, std::move(densities), RawRange{lo, hi});
}

DensityWindow::DensityWindow(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "density window needs 0 <= lo < hi <= 1", "window");
  }
}

void check_slice_index(const Dims& dims, Axis axis, int index) {
  const int n = dims[plane_axes(axis).w];
  if (index < 0 || index >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "slice " + std::to_string(index) + " outside [0, " + std::to_string(n) + ") along " +
                    std::string(axis_letter(axis)),
                "index");
  }
}

Slice2D extract_slice(const Volume& volume, Axis axis, int index) {
  const Dims& dims = volume.dims();
  check_slice_index(dims, axis, index);
  const PlaneAxes pa = plane_axes(axis);

  Slice2D slice;
  slice.axis = axis;
  slice.index = index;
  slice.width = dims[pa.u];
  slice.height = dims[pa.v];
  slice.spacing = {volume.spacing()[pa.u], volume.spacing()[pa.v]};
  slice.values.resize(static_cast<std::size_t>(slice.width) * slice.height);

  int c[3];
  c[pa.w] = index;
  for (int v = 0; v < slice.height; ++v) {
    c[pa.v] = v;
    for (int u = 0; u < slice.width; ++u) {
      c[pa.u] = u;
      slice.at(u, v) = volume.at(c[0], c[1], c[2]);
    }
  }
  return slice;
}

double sample_trilinear(const Volume& volume, Vec3 p, const DensityWindow& window) {
  const Dims& d = volume.dims();
  if (!(p.x >= 0.0 && p.y >= 0.0 && p.z >= 0.0 && p.x <= d.nx - 1 && p.y <= d.ny - 1 &&
        p.z <= d.nz - 1)) {
    return 0.0;
  }
  const int x0 = std::min(static_cast<int>(p.x), std::max(d.nx - 2, 0));
  const int y0 = std::min(static_cast<int>(p.y), std::max(d.ny - 2, 0));
  const int z0 = std::min(static_cast<int>(p.z), std::max(d.nz - 2, 0));
  const int x1 = std::min(x0 + 1, d.nx - 1);
  const int y1 = std::min(y0 + 1, d.ny - 1);
  const int z1 = std::min(z0 + 1, d.nz - 1);
  const double fx = p.x - x0;
  const double fy = p.y - y0;
  const double fz = p.z - z0;

  // std::lerp is exact at the nodes and never leaves [a, b].
  const auto at = [&](int x, int y, int z) { return static_cast<double>(volume.at(x, y, z)); };
  const double c00 = std::lerp(at(x0, y0, z0), at(x1, y0, z0), fx);
  const double c10 = std::lerp(at(x0, y1, z0), at(x1, y1, z0), fx);
  const double c01 = std::lerp(at(x0, y0, z1), at(x1, y0, z1), fx);
  const double c11 = std::lerp(at(x0, y1, z1), at(x1, y1, z1), fx);
  const double density = std::lerp(std::lerp(c00, c10, fy), std::lerp(c01, c11, fy), fz);
  return apply_window(density, window);
}

}  // namespace vrc
