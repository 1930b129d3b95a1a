// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "vrcontour/brush.hpp"
#include "vrcontour/error.hpp"
#include "vrcontour/interp.hpp"

using namespace vrc;

namespace {

Mask2D empty_plane(int w, int h) {
  Mask2D m;
  m.width = w;
  m.height = h;
  m.values.assign(static_cast<std::size_t>(w) * h, 0);
  return m;
}

LabelVolume disc_keys(Dims d, int z0, double r0, int z1, double r1) {
  const Volume v(d, {1, 1, 1}, std::vector<float>(d.voxel_count(), 0.0F));
  LabelVolume m(d);
  const Vec2 c{(d.nx - 1) / 2.0, (d.ny - 1) / 2.0};
  paint_disc(m, v, Axis::Transverse, z0, c, r0, BrushMode::Paint);
  paint_disc(m, v, Axis::Transverse, z1, c, r1, BrushMode::Paint);
  return m;
}

std::size_t plane_count(const LabelVolume& m, int z) {
  std::size_t n = 0;
  for (auto b : mask_slice(m, Axis::Transverse, z).values) n += b;
  return n;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(SignedDistance, SingleVoxel) {
  Mask2D m = empty_plane(3, 3);
  m.at(1, 1) = 1;
  const SignedDistanceField f = signed_distance(m, {1, 1});
  EXPECT_NEAR(f.at(1, 1), -std::sqrt(0.125), 1e-12);
  EXPECT_NEAR(f.at(0, 1), 0.5, 1e-12);
  EXPECT_NEAR(f.at(0, 0), 0.75 * std::sqrt(2.0), 1e-12);
}

TEST(SignedDistance, EmptyAndFullMasks) {
  const SignedDistanceField e = signed_distance(empty_plane(4, 5), {1, 1});
  for (double d : e.values) EXPECT_EQ(d, kEmptySliceDistance);
  Mask2D full = empty_plane(4, 5);
  std::fill(full.values.begin(), full.values.end(), 1);
  const SignedDistanceField f = signed_distance(full, {1, 1});
  for (double d : f.values) EXPECT_LT(d, 0.0);
  EXPECT_NEAR(f.at(0, 2), -0.5, 1e-12);
  EXPECT_NEAR(f.at(0, 0), -std::sqrt(0.125), 1e-12);
  EXPECT_NEAR(f.at(1, 2), -1.5, 1e-12);
}

TEST(SignedDistance, MatchesAllPairsOracle) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const LabelVolume vol = oracle::random_mask(rng, {23, 17, 1}, 0.1 + 0.02 * trial);
    const Mask2D m = mask_slice(vol, Axis::Transverse, 0);
    const Vec2 sp{0.8, 1.9};
    const auto expected = oracle::brute_sdf(m, sp, kEmptySliceDistance);
    const SignedDistanceField f = signed_distance(m, sp);
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(f.values[i], expected[i], 1e-9);
  }
}

TEST(SignedDistance, SignMatchesMask) {
  std::mt19937_64 rng(73);
  const LabelVolume vol = oracle::random_mask(rng, {30, 30, 1}, 0.5);
  const Mask2D m = mask_slice(vol, Axis::Transverse, 0);
  const SignedDistanceField f = signed_distance(m, {1, 1});
  for (std::size_t i = 0; i < m.values.size(); ++i) EXPECT_EQ(f.values[i] < 0.0, m.values[i] != 0);
}

TEST(InterpolatePlane, EndpointsReproduceTheKeys) {
  std::mt19937_64 rng(79);
  const LabelVolume vol = oracle::random_mask(rng, {15, 12, 2}, 0.4);
  const Mask2D a = mask_slice(vol, Axis::Transverse, 0), b = mask_slice(vol, Axis::Transverse, 1);
  const auto fa = signed_distance(a, {1, 1}), fb = signed_distance(b, {1, 1});
  EXPECT_EQ(interpolate_plane(fa, fb, 0.0).values, a.values);
  EXPECT_EQ(interpolate_plane(fa, fb, 1.0).values, b.values);
}

TEST(InterpolateSlices, IdenticalKeysFillIdentically) {
  LabelVolume m = disc_keys({21, 21, 9}, 1, 5.0, 7, 5.0);
  const auto key = mask_slice(m, Axis::Transverse, 1).values;
  const std::vector<int> keys{1, 7};
  interpolate_slices(m, Axis::Transverse, keys);
  for (int z = 2; z < 7; ++z) EXPECT_EQ(mask_slice(m, Axis::Transverse, z).values, key);
  EXPECT_EQ(plane_count(m, 0), 0U);
  EXPECT_EQ(plane_count(m, 8), 0U);
}

TEST(InterpolateSlices, RadiusFourToEightPassesThroughSix) {
  LabelVolume m = disc_keys({31, 31, 5}, 0, 4.0, 4, 8.0);
  const std::vector<int> keys{0, 4};
  interpolate_slices(m, Axis::Transverse, keys);
  const Mask2D mid = mask_slice(m, Axis::Transverse, 2);
  const Vec2 c{15, 15};
  for (int v = 0; v < 31; ++v)
    for (int u = 0; u < 31; ++u) {
      const double r = std::hypot(u - c.x, v - c.y);
      if (r <= 5.0) EXPECT_TRUE(mid.at(u, v)) << u << "," << v;
      if (r >= 7.0) EXPECT_FALSE(mid.at(u, v)) << u << "," << v;
    }
  EXPECT_LT(plane_count(m, 1), plane_count(m, 2));
  EXPECT_LT(plane_count(m, 2), plane_count(m, 3));
}

TEST(InterpolateSlices, KeysAreUntouchedAndOutsideIsLeftAlone) {
  std::mt19937_64 rng(83);
  LabelVolume m = oracle::random_mask(rng, {10, 10, 10}, 0.3);
  const LabelVolume before = m;
  const std::vector<int> keys{2, 5, 8};
  interpolate_slices(m, Axis::Sagittal, keys, {1.0, 1.2, 2.0});
  for (int x : {0, 1, 2, 5, 8, 9})
    EXPECT_EQ(mask_slice(m, Axis::Sagittal, x).values, mask_slice(before, Axis::Sagittal, x).values);
}

TEST(InterpolateSlices, SymmetricUnderReversal) {
  std::mt19937_64 rng(89);
  const Dims d{16, 14, 7};
  LabelVolume fwd(d), rev(d);
  const LabelVolume a = oracle::random_mask(rng, {16, 14, 1}, 0.5);
  const LabelVolume b = oracle::random_mask(rng, {16, 14, 1}, 0.5);
  Mask2D pa = mask_slice(a, Axis::Transverse, 0), pb = mask_slice(b, Axis::Transverse, 0);
  pa.index = 0;
  pb.index = 6;
  write_slice(fwd, pa);
  write_slice(fwd, pb);
  pa.index = 6;
  pb.index = 0;
  write_slice(rev, pa);
  write_slice(rev, pb);
  const std::vector<int> keys{0, 6};
  interpolate_slices(fwd, Axis::Transverse, keys);
  interpolate_slices(rev, Axis::Transverse, keys);
  for (int z = 1; z < 6; ++z) {
    const auto f = mask_slice(fwd, Axis::Transverse, z).values;
    const auto r = mask_slice(rev, Axis::Transverse, 6 - z).values;
    // Ties at exactly zero can land differently; they are rare with random masks.
    std::size_t diff = 0;
    for (std::size_t i = 0; i < f.size(); ++i) diff += f[i] != r[i];
    EXPECT_LE(diff, 2U) << "z " << z;
  }
}

TEST(InterpolateSlices, NestedKeysGiveNestedSlices) {
  LabelVolume m = disc_keys({25, 25, 7}, 0, 3.0, 6, 9.0);
  const std::vector<int> keys{0, 6};
  interpolate_slices(m, Axis::Transverse, keys);
  for (int z = 0; z < 6; ++z) {
    const auto lo = mask_slice(m, Axis::Transverse, z).values;
    const auto hi = mask_slice(m, Axis::Transverse, z + 1).values;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (lo[i]) EXPECT_TRUE(hi[i]);
  }
}

TEST(InterpolateSlices, EmptyKeyShrinksToNothing) {
  LabelVolume m = disc_keys({21, 21, 5}, 0, 6.0, 4, 6.0);
  for (int y = 0; y < 21; ++y)
    for (int x = 0; x < 21; ++x) m.set(x, y, 4, false);
  const std::vector<int> keys{0, 4};
  interpolate_slices(m, Axis::Transverse, keys);
  for (int z = 1; z < 4; ++z) EXPECT_EQ(plane_count(m, z), 0U);
}

TEST(InterpolateSlices, KeyErrors) {
  LabelVolume m({4, 4, 6});
  const std::vector<int> one{2}, unsorted{3, 1}, dup{2, 2}, out{1, 6};
  EXPECT_EQ(code_of([&] { interpolate_slices(m, Axis::Transverse, one); }), ErrorCode::NeedTwoKeys);
  EXPECT_EQ(code_of([&] { interpolate_slices(m, Axis::Transverse, unsorted); }), ErrorCode::UnsortedKeys);
  EXPECT_EQ(code_of([&] { interpolate_slices(m, Axis::Transverse, dup); }), ErrorCode::UnsortedKeys);
  EXPECT_EQ(code_of([&] { interpolate_slices(m, Axis::Transverse, out); }), ErrorCode::IndexOutOfRange);
}
