// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "vrcontour/contours.hpp"

using namespace vrc;

namespace {

Mask2D plane(int w, int h, std::initializer_list<std::pair<int, int>> set) {
  Mask2D m;
  m.width = w;
  m.height = h;
  m.values.assign(static_cast<std::size_t>(w) * h, 0);
  for (auto [u, v] : set) m.at(u, v) = 1;
  return m;
}

bool crosses(Vec2 p, const Polygon& poly) {
  bool inside = false;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Vec2 a = v[i], b = v[i + 1];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

// Even-odd fill of the polygons at every voxel center.
Mask2D rasterize(const std::vector<Polygon>& polys, int w, int h, Vec2 sp) {
  Mask2D m = plane(w, h, {});
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) {
      bool in = false;
      for (const Polygon& p : polys) in ^= crosses({u * sp.x, v * sp.y}, p);
      m.at(u, v) = in ? 1 : 0;
    }
  return m;
}

}  // namespace

TEST(Contours, EmptyMaskHasNone) {
  EXPECT_TRUE(extract_contours(plane(5, 4, {}), {1, 1}).empty());
}

TEST(Contours, SingleVoxelDiamond) {
  const auto polys = extract_contours(plane(3, 3, {{1, 1}}), {1, 1});
  ASSERT_EQ(polys.size(), 1U);
  EXPECT_EQ(polys[0].vertices.size(), 5U);
  EXPECT_EQ(polys[0].vertices.front(), polys[0].vertices.back());
  EXPECT_DOUBLE_EQ(signed_area(polys[0]), 0.5);
  for (const Vec2& p : polys[0].vertices) EXPECT_DOUBLE_EQ(std::abs(p.x - 1) + std::abs(p.y - 1), 0.5);
}

TEST(Contours, BlockAreaScalesWithSpacing) {
  const Mask2D m = plane(4, 4, {{1, 1}, {2, 1}, {1, 2}, {2, 2}});
  const auto polys = extract_contours(m, {2.0, 3.0});
  ASSERT_EQ(polys.size(), 1U);
  // Octagon: 2x2 square grown by half a voxel, corners cut.
  EXPECT_DOUBLE_EQ(signed_area(polys[0]), (4.0 - 4 * 0.125) * 6.0);
}

TEST(Contours, RingHasOuterLoopAndHole) {
  Mask2D m = plane(7, 7, {});
  for (int v = 1; v <= 5; ++v)
    for (int u = 1; u <= 5; ++u)
      if (!(u == 3 && v == 3)) m.at(u, v) = 1;
  const auto polys = extract_contours(m, {1, 1});
  ASSERT_EQ(polys.size(), 2U);
  int holes = 0;
  for (const Polygon& p : polys) holes += is_hole(p) ? 1 : 0;
  EXPECT_EQ(holes, 1);
}

TEST(Contours, DiagonalNeighborsStaySeparate) {
  const auto polys = extract_contours(plane(4, 4, {{1, 1}, {2, 2}}), {1, 1});
  ASSERT_EQ(polys.size(), 2U);
  for (const Polygon& p : polys) EXPECT_DOUBLE_EQ(signed_area(p), 0.5);
}

TEST(Contours, SegmentsMatchCaseTable) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const LabelVolume vol = oracle::random_mask(rng, {9, 7, 1}, 0.45);
    const Mask2D m = mask_slice(vol, Axis::Transverse, 0);
    const Vec2 sp{1.0, 1.5};
    const auto segs = oracle::ms_segments(m, sp);
    std::size_t edges = 0;
    for (const Polygon& p : extract_contours(m, sp)) edges += p.vertices.size() - 1;
    EXPECT_EQ(edges, segs.size());
  }
}

TEST(Contours, RasterizingTheLoopsGivesTheMaskBack) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 80; ++trial) {
    const LabelVolume vol = oracle::random_mask(rng, {12, 10, 1}, trial % 2 ? 0.3 : 0.6);
    const Mask2D m = mask_slice(vol, Axis::Transverse, 0);
    const Vec2 sp{0.9, 1.7};
    const auto polys = extract_contours(m, sp);
    EXPECT_EQ(rasterize(polys, 12, 10, sp).values, m.values) << "trial " << trial;
    double area = 0.0;
    for (const Polygon& p : polys) area += signed_area(p);
    EXPECT_GT(area + 1e-12, 0.0);
  }
}

TEST(Contours, ContourSetSkipsEmptySlices) {
  LabelVolume m({5, 5, 4});
  m.set(2, 2, 1, true);
  m.set(2, 3, 3, true);
  const ContourSet cs = contour_set(m, Axis::Transverse, {1, 1, 1});
  ASSERT_EQ(cs.per_slice.size(), 2U);
  EXPECT_TRUE(cs.per_slice.count(1));
  EXPECT_TRUE(cs.per_slice.count(3));
}
