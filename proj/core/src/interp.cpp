// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "vrcontour/contours.hpp"
#include "vrcontour/error.hpp"

namespace vrc {

namespace {

double point_segment_distance_sq(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len_sq = dot(ab, ab);
  double t = len_sq > 0.0 ? dot(p - a, ab) / len_sq : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 d = p - (a + ab * t);
  return dot(d, d);
}

struct BoundarySegment {
  Vec2 a;
  Vec2 b;
};

// Uniform bucket grid over the (padded) slice for nearest-segment queries.
class SegmentGrid {
 public:
  SegmentGrid(std::vector<BoundarySegment> segments, int width, int height, Vec2 spacing)
      : segments_(std::move(segments)), spacing_(spacing) {
    cell_ = {kCellVoxels * spacing.x, kCellVoxels * spacing.y};
    origin_ = {-1.0 * spacing.x, -1.0 * spacing.y};
    cols_ = (width + 1) / kCellVoxels + 2;
    rows_ = (height + 1) / kCellVoxels + 2;
    buckets_.resize(static_cast<std::size_t>(cols_) * rows_);
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const auto& s = segments_[i];
      const int c0 = col(std::min(s.a.x, s.b.x));
      const int c1 = col(std::max(s.a.x, s.b.x));
      const int r0 = row(std::min(s.a.y, s.b.y));
      const int r1 = row(std::max(s.a.y, s.b.y));
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) buckets_[static_cast<std::size_t>(r) * cols_ + c].push_back(i);
      }
    }
  }

  double nearest(Vec2 p) const {
    const int pc = col(p.x);
    const int pr = row(p.y);
    const double min_cell = std::min(cell_.x, cell_.y);
    double best_sq = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(cols_, rows_);
    for (int ring = 0; ring <= max_ring; ++ring) {
      const double bound = (ring - 1) * min_cell;
      if (ring > 0 && bound > 0.0 && bound * bound >= best_sq) break;
      for (int r = pr - ring; r <= pr + ring; ++r) {
        if (r < 0 || r >= rows_) continue;
        const bool edge_row = r == pr - ring || r == pr + ring;
        for (int c = pc - ring; c <= pc + ring; ++c) {
          if (c < 0 || c >= cols_) continue;
          if (!edge_row && c != pc - ring && c != pc + ring) continue;
          for (std::size_t i : buckets_[static_cast<std::size_t>(r) * cols_ + c]) {
            best_sq = std::min(best_sq, point_segment_distance_sq(p, segments_[i].a, segments_[i].b));
          }
        }
      }
    }
    return std::sqrt(best_sq);
  }

 private:
  static constexpr int kCellVoxels = 4;

  int col(double x) const {
    return std::clamp(static_cast<int>(std::floor((x - origin_.x) / cell_.x)), 0, cols_ - 1);
  }
  int row(double y) const {
    return std::clamp(static_cast<int>(std::floor((y - origin_.y) / cell_.y)), 0, rows_ - 1);
  }

  std::vector<BoundarySegment> segments_;
  Vec2 spacing_;
  Vec2 cell_;
  Vec2 origin_;
  int cols_ = 0;
  int rows_ = 0;
  std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace

SignedDistanceField signed_distance(const Mask2D& mask, Vec2 spacing) {
  SignedDistanceField field;
  field.axis = mask.axis;
  field.index = mask.index;
  field.width = mask.width;
  field.height = mask.height;
  field.spacing = spacing;
  field.values.assign(static_cast<std::size_t>(mask.width) * mask.height, kEmptySliceDistance);

  std::vector<BoundarySegment> segments;
  for (const Polygon& polygon : extract_contours(mask, spacing)) {
    for (std::size_t i = 0; i + 1 < polygon.vertices.size(); ++i) {
      segments.push_back({polygon.vertices[i], polygon.vertices[i + 1]});
    }
  }
  if (segments.empty()) return field;

  const SegmentGrid grid(std::move(segments), mask.width, mask.height, spacing);
  for (int v = 0; v < mask.height; ++v) {
    for (int u = 0; u < mask.width; ++u) {
      const double d = grid.nearest({u * spacing.x, v * spacing.y});
      field.at(u, v) = mask.at(u, v) != 0 ? -d : d;
    }
  }
  return field;
}

Mask2D interpolate_plane(const SignedDistanceField& a, const SignedDistanceField& b, double t) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::DimensionMismatch, "distance fields differ in size", "keys");
  }
  Mask2D out;
  out.axis = a.axis;
  out.width = a.width;
  out.height = a.height;
  out.spacing = a.spacing;
  out.values.resize(a.values.size());
  const double wa = 1.0 - t;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    out.values[i] = wa * a.values[i] + t * b.values[i] < 0.0 ? 1 : 0;
  }
  return out;
}

void interpolate_slices(LabelVolume& mask, Axis axis, std::span<const int> keys, Vec3 spacing) {
  if (keys.size() < 2) {
    throw Error(ErrorCode::NeedTwoKeys, "interpolation needs at least two key slices", "keys");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    check_slice_index(mask.dims(), axis, keys[i]);
    if (i > 0 && keys[i] <= keys[i - 1]) {
      throw Error(ErrorCode::UnsortedKeys, "key slices must be strictly increasing", "keys");
    }
  }

  std::map<int, SignedDistanceField> fields;
  for (int k : keys) {
    const Mask2D plane = mask_slice(mask, axis, k, spacing);
    fields.emplace(k, signed_distance(plane, plane.spacing));
  }

  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    const int a = keys[i];
    const int b = keys[i + 1];
    for (int j = a + 1; j < b; ++j) {
      Mask2D plane =
          interpolate_plane(fields.at(a), fields.at(b), static_cast<double>(j - a) / (b - a));
      plane.index = j;
      write_slice(mask, plane);
    }
  }
}

}  // namespace vrc
