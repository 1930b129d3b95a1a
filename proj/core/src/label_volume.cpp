// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/label_volume.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "vrcontour/error.hpp"

namespace vrc {

LabelVolume::LabelVolume(Dims dims) : dims_(dims), bits_(dims.voxel_count(), 0) {
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) {
    throw Error(ErrorCode::InvalidArgument, "mask dims must be >= 1", "dims");
  }
}

LabelVolume::LabelVolume(Dims dims, std::vector<std::uint8_t> bits)
    : dims_(dims), bits_(std::move(bits)) {
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) {
    throw Error(ErrorCode::InvalidArgument, "mask dims must be >= 1", "dims");
  }
  if (bits_.size() != dims_.voxel_count()) {
    throw Error(ErrorCode::DimensionMismatch, "mask bit count does not match dims", "dims");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

std::size_t LabelVolume::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void LabelVolume::clear() noexcept { std::fill(bits_.begin(), bits_.end(), std::uint8_t{0}); }

void check_same_grid(const LabelVolume& mask, const Volume& volume) {
  if (!(mask.dims() == volume.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "mask dims differ from volume dims", "dims");
  }
}

Mask2D mask_slice(const LabelVolume& mask, Axis axis, int index, Vec3 spacing) {
  const Dims& dims = mask.dims();
  check_slice_index(dims, axis, index);
  const PlaneAxes pa = plane_axes(axis);

  Mask2D plane;
  plane.axis = axis;
  plane.index = index;
  plane.width = dims[pa.u];
  plane.height = dims[pa.v];
  plane.spacing = {spacing[pa.u], spacing[pa.v]};
  plane.values.resize(static_cast<std::size_t>(plane.width) * plane.height);

  int c[3];
  c[pa.w] = index;
  for (int v = 0; v < plane.height; ++v) {
    c[pa.v] = v;
    for (int u = 0; u < plane.width; ++u) {
      c[pa.u] = u;
      plane.at(u, v) = mask.at(c[0], c[1], c[2]) ? 1 : 0;
    }
  }
  return plane;
}

void write_slice(LabelVolume& mask, const Mask2D& plane) {
  const Dims& dims = mask.dims();
  check_slice_index(dims, plane.axis, plane.index);
  const PlaneAxes pa = plane_axes(plane.axis);
  if (plane.width != dims[pa.u] || plane.height != dims[pa.v]) {
    throw Error(ErrorCode::DimensionMismatch, "plane size does not match the mask", "plane");
  }
  int c[3];
  c[pa.w] = plane.index;
  for (int v = 0; v < plane.height; ++v) {
    c[pa.v] = v;
    for (int u = 0; u < plane.width; ++u) {
      c[pa.u] = u;
      mask.set(c[0], c[1], c[2], plane.at(u, v) != 0);
    }
  }
}

std::vector<std::uint64_t> encode_rle(std::span<const std::uint8_t> bits) {
  std::vector<std::uint64_t> runs;
  std::uint8_t current = 0;
  std::uint64_t length = 0;
  for (std::uint8_t b : bits) {
    const std::uint8_t bit = b != 0 ? 1 : 0;
    if (bit == current) {
      ++length;
    } else {
      runs.push_back(length);
      current = bit;
      length = 1;
    }
  }
  runs.push_back(length);
  return runs;
}

std::vector<std::uint8_t> decode_rle(std::span<const std::uint64_t> runs, std::size_t voxel_count) {
  std::uint64_t total = 0;
  for (std::uint64_t r : runs) {
    if (r > voxel_count || total + r > voxel_count) {
      throw Error(ErrorCode::CorruptFile, "RLE runs exceed the voxel count", "rle");
    }
    total += r;
  }
  if (total != voxel_count) {
    throw Error(ErrorCode::CorruptFile,
                "RLE runs cover " + std::to_string(total) + " voxels, expected " +
                    std::to_string(voxel_count),
                "rle");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(voxel_count);
  std::uint8_t value = 0;
  for (std::uint64_t r : runs) {
    bits.insert(bits.end(), r, value);
    value ^= 1;
  }
  return bits;
}

std::uint64_t mask_hash(const LabelVolume& mask) {
  std::uint64_t h = 14695981039346656037ULL;
  const auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (int d : {mask.dims().nx, mask.dims().ny, mask.dims().nz}) {
    for (int shift = 0; shift < 32; shift += 8) mix(static_cast<std::uint8_t>(d >> shift));
  }
  for (std::uint8_t b : mask.bits()) mix(b);
  return h;
}

}  // namespace vrc
