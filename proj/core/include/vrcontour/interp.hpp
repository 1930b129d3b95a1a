// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "vrcontour/label_volume.hpp"

namespace vrc {

/// Signed Euclidean distance in mm from each voxel center to the 0.5-level
/// marching-squares boundary of a 2D mask: negative inside, positive outside.
using SignedDistanceField = PlaneGrid<double>;

/// Stand-in for +infinity when a mask has no boundary at all (empty slice).
inline constexpr double kEmptySliceDistance = 1.0e6;

/// Exact distance transform of `mask` in mm. An empty mask yields
/// kEmptySliceDistance everywhere.
SignedDistanceField signed_distance(const Mask2D& mask, Vec2 spacing);

/// Voxels where (1 - t) * a + t * b < 0. Fields must share a size.
Mask2D interpolate_plane(const SignedDistanceField& a, const SignedDistanceField& b, double t);

/// Shape-based inter-slice interpolation. Key slices stay untouched; every
/// slice strictly between two consecutive keys is replaced by the blend of
/// the keys' distance fields; slices outside [first, last] key are left alone.
/// Throws NeedTwoKeys, UnsortedKeys (keys must strictly increase) or
/// IndexOutOfRange.
void interpolate_slices(LabelVolume& mask, Axis axis, std::span<const int> keys,
                        Vec3 spacing = {1.0, 1.0, 1.0});

}  // namespace vrc
