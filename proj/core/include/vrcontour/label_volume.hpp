// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vrcontour/volume.hpp"

namespace vrc {

/// Binary contour mask aligned voxel-for-voxel with a Volume. One structure
/// per mask; several structures means several masks.
class LabelVolume {
 public:
  LabelVolume() = default;
  explicit LabelVolume(Dims dims);
  LabelVolume(Dims dims, std::vector<std::uint8_t> bits);

  const Dims& dims() const noexcept { return dims_; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  bool at(int x, int y, int z) const noexcept { return bits_[dims_.index(x, y, z)] != 0; }
  void set(int x, int y, int z, bool value) noexcept {
    bits_[dims_.index(x, y, z)] = value ? 1 : 0;
  }
  bool at_index(std::size_t i) const noexcept { return bits_[i] != 0; }
  void set_index(std::size_t i, bool value) noexcept { bits_[i] = value ? 1 : 0; }

  std::size_t count() const noexcept;
  void clear() noexcept;

  friend bool operator==(const LabelVolume&, const LabelVolume&) = default;

 private:
  Dims dims_;
  std::vector<std::uint8_t> bits_ = std::vector<std::uint8_t>(1, 0);
};

/// Throws DimensionMismatch unless the mask was built for this volume's grid.
void check_same_grid(const LabelVolume& mask, const Volume& volume);

using Mask2D = PlaneGrid<std::uint8_t>;

/// The exact plane of bits at `index` along `axis`; throws IndexOutOfRange.
/// `spacing` is copied into the result so contours come out in mm.
Mask2D mask_slice(const LabelVolume& mask, Axis axis, int index, Vec3 spacing = {1.0, 1.0, 1.0});

/// Overwrites one plane of the mask; the plane must have the right size.
void write_slice(LabelVolume& mask, const Mask2D& plane);

/// Run lengths alternating 0-run, 1-run, ..., always starting with a
/// (possibly empty) 0-run, in x-fastest voxel order.
std::vector<std::uint64_t> encode_rle(std::span<const std::uint8_t> bits);
/// Throws CorruptFile when the runs do not add up to `voxel_count`.
std::vector<std::uint8_t> decode_rle(std::span<const std::uint64_t> runs, std::size_t voxel_count);

/// 64-bit FNV-1a over dims and bits; stable across runs and platforms.
std::uint64_t mask_hash(const LabelVolume& mask);

}  // namespace vrc
