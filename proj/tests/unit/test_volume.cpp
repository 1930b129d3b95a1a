// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "vrcontour/error.hpp"
#include "vrcontour/volume.hpp"

using namespace vrc;

namespace {

Volume gradient_z(Dims d) {
  std::vector<double> raw(d.voxel_count());
  for (int z = 0; z < d.nz; ++z)
    for (int y = 0; y < d.ny; ++y)
      for (int x = 0; x < d.nx; ++x) raw[d.index(x, y, z)] = z;
  return normalize_minmax(raw, d, {1, 1, 1});
}

Volume random_volume(std::mt19937_64& rng, Dims d) {
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<double> raw(d.voxel_count());
  for (double& v : raw) v = u(rng);
  return normalize_minmax(raw, d, {1.0, 1.5, 2.0});
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

TEST(Normalize, ThreeValuesMapToZeroHalfOne) {
  const std::vector<double> raw{10, 20, 30};
  const Volume v = normalize_minmax(raw, {3, 1, 1}, {1, 1, 1});
  EXPECT_DOUBLE_EQ(v.at(0, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(v.at(1, 0, 0), 0.5);
  EXPECT_DOUBLE_EQ(v.at(2, 0, 0), 1.0);
  EXPECT_EQ(v.raw_range(), (RawRange{10, 30}));
}

TEST(Normalize, UnitRangeIsIdentity) {
  const std::vector<double> raw{0.0, 0.25, 1.0, 0.75};
  const Volume v = normalize_minmax(raw, {2, 2, 1}, {1, 1, 1});
  for (std::size_t i = 0; i < raw.size(); ++i) EXPECT_FLOAT_EQ(v.densities()[i], static_cast<float>(raw[i]));
}

TEST(Normalize, ConstantAndMismatchedInputsThrow) {
  const std::vector<double> same(8, 7.0);
  EXPECT_EQ(code_of([&] { normalize_minmax(same, {2, 2, 2}, {1, 1, 1}); }), ErrorCode::ConstantVolume);
  EXPECT_EQ(code_of([&] { normalize_minmax(same, {2, 2, 3}, {1, 1, 1}); }), ErrorCode::DimensionMismatch);
}

TEST(Normalize, KeepsResolutionAndOrder) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-500.0, 3000.0);
  std::vector<double> raw(5 * 4 * 3);
  for (double& v : raw) v = u(rng);
  const Volume vol = normalize_minmax(raw, {5, 4, 3}, {0.7, 0.7, 2.5});
  EXPECT_EQ(vol.densities().size(), raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    EXPECT_GE(vol.densities()[i], 0.0F);
    EXPECT_LE(vol.densities()[i], 1.0F);
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (raw[i] < raw[j]) EXPECT_LE(vol.densities()[i], vol.densities()[j]);
    }
  }
}

TEST(Volume, RejectsBadConstruction) {
  EXPECT_EQ(code_of([] { Volume({0, 1, 1}, {1, 1, 1}, {}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Volume({1, 1, 1}, {1, 0, 1}, {0.0F}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Volume({1, 1, 1}, {1, 1, 1}, {1.5F}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Volume({2, 1, 1}, {1, 1, 1}, {0.5F}); }), ErrorCode::DimensionMismatch);
}

TEST(Window, Examples) {
  EXPECT_DOUBLE_EQ(apply_window(0.4, DensityWindow(0.2, 0.6)), 0.5);
  EXPECT_DOUBLE_EQ(apply_window(0.1, DensityWindow(0.2, 0.6)), 0.0);
  for (double d : {0.0, 0.13, 0.5, 0.99, 1.0}) EXPECT_DOUBLE_EQ(apply_window(d, DensityWindow(0, 1)), d);
}

TEST(Window, InvalidBoundsThrow) {
  EXPECT_THROW(DensityWindow(0.5, 0.5), Error);
  EXPECT_THROW(DensityWindow(0.6, 0.2), Error);
  EXPECT_THROW(DensityWindow(-0.1, 0.2), Error);
  EXPECT_THROW(DensityWindow(0.1, 1.2), Error);
}

TEST(Window, MonotoneWithExactEnds) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    double lo = u(rng), hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    if (hi - lo < 1e-6) continue;
    const DensityWindow w(lo, hi);
    EXPECT_EQ(apply_window(lo, w), 0.0);
    EXPECT_EQ(apply_window(hi, w), 1.0);
    double prev = -1.0;
    for (int k = 0; k <= 100; ++k) {
      const double value = apply_window(k / 100.0, w);
      EXPECT_GE(value, prev);
      prev = value;
    }
  }
}

TEST(Slice, TransverseOfTinyVolume) {
  const Volume v({2, 2, 2}, {1, 1, 1}, {0.0F, 0.1F, 0.2F, 0.3F, 0.4F, 0.5F, 0.6F, 0.7F});
  const Slice2D s = extract_slice(v, Axis::Transverse, 0);
  ASSERT_EQ(s.width, 2);
  ASSERT_EQ(s.height, 2);
  EXPECT_FLOAT_EQ(s.at(0, 0), 0.0F);
  EXPECT_FLOAT_EQ(s.at(1, 0), 0.1F);
  EXPECT_FLOAT_EQ(s.at(0, 1), 0.2F);
  EXPECT_FLOAT_EQ(s.at(1, 1), 0.3F);
}

TEST(Slice, IndexOutOfRange) {
  const Volume v = gradient_z({3, 3, 4});
  EXPECT_EQ(code_of([&] { extract_slice(v, Axis::Transverse, 4); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { extract_slice(v, Axis::Sagittal, -1); }), ErrorCode::IndexOutOfRange);
}

TEST(Slice, GradientPlanesAreUniform) {
  const Volume v = gradient_z({4, 3, 6});
  for (int k = 0; k < 6; ++k) {
    const Slice2D s = extract_slice(v, Axis::Transverse, k);
    for (float d : s.values) EXPECT_FLOAT_EQ(d, static_cast<float>(k / 5.0));
  }
}

TEST(Slice, PlanesTileTheVolumeAlongEveryAxis) {
  std::mt19937_64 rng(5);
  const Dims d{5, 4, 3};
  const Volume v = random_volume(rng, d);
  for (Axis axis : {Axis::Transverse, Axis::Sagittal, Axis::Coronal}) {
    const PlaneAxes pa = plane_axes(axis);
    std::vector<float> rebuilt(d.voxel_count(), -1.0F);
    for (int i = 0; i < d[pa.w]; ++i) {
      const Slice2D s = extract_slice(v, axis, i);
      EXPECT_EQ(s.width, d[pa.u]);
      EXPECT_EQ(s.height, d[pa.v]);
      for (int b = 0; b < s.height; ++b) {
        for (int a = 0; a < s.width; ++a) {
          int c[3];
          c[pa.u] = a;
          c[pa.v] = b;
          c[pa.w] = i;
          rebuilt[d.index(c[0], c[1], c[2])] = s.at(a, b);
        }
      }
    }
    EXPECT_TRUE(std::equal(rebuilt.begin(), rebuilt.end(), v.densities().begin()));
  }
}

TEST(Coordinates, WorldToVoxel) {
  const Volume v = gradient_z({3, 3, 4});
  EXPECT_EQ(world_to_voxel(v, {0, 0, 0}), (Vec3{0, 0, 0}));
  const Volume aniso({3, 2, 3}, {1, 1, 3}, std::vector<float>(18, 0.0F));
  EXPECT_EQ(world_to_voxel(aniso, {2, 1, 6}), (Vec3{2, 1, 2}));
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) {
      const Vec3 c{static_cast<double>(x), 1.0, static_cast<double>(z)};
      EXPECT_EQ(world_to_voxel(aniso, voxel_to_world(aniso, c)), c);
    }
}

TEST(Trilinear, NodesMidpointsAndOutside) {
  const Volume v({2, 1, 1}, {1, 1, 1}, {0.0F, 1.0F});
  const DensityWindow full;
  EXPECT_DOUBLE_EQ(sample_trilinear(v, {0, 0, 0}, full), 0.0);
  EXPECT_DOUBLE_EQ(sample_trilinear(v, {1, 0, 0}, full), 1.0);
  EXPECT_DOUBLE_EQ(sample_trilinear(v, {0.5, 0, 0}, full), 0.5);
  EXPECT_DOUBLE_EQ(sample_trilinear(v, {50, -3, 9}, full), 0.0);
  EXPECT_DOUBLE_EQ(sample_trilinear(v, {1.0001, 0, 0}, full), 0.0);
  EXPECT_DOUBLE_EQ(sample_trilinear(v, {1, 0, 0}, DensityWindow(0.0, 0.5)), 1.0);
}

TEST(Trilinear, MatchesCornerWeightOracleAndStaysInStencil) {
  std::mt19937_64 rng(17);
  const Dims d{6, 5, 4};
  const Volume v = random_volume(rng, d);
  std::uniform_real_distribution<double> ux(0, d.nx - 1), uy(0, d.ny - 1), uz(0, d.nz - 1);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 p{ux(rng), uy(rng), uz(rng)};
    const double got = sample_trilinear(v, p, {});
    EXPECT_NEAR(got, oracle::trilinear_weights(v, p.x, p.y, p.z), 1e-12);
    const int x0 = std::min(static_cast<int>(p.x), d.nx - 2);
    const int y0 = std::min(static_cast<int>(p.y), d.ny - 2);
    const int z0 = std::min(static_cast<int>(p.z), d.nz - 2);
    double lo = 1.0, hi = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double s = v.at(x0 + (k & 1), y0 + ((k >> 1) & 1), z0 + ((k >> 2) & 1));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    EXPECT_GE(got, lo - 1e-12);
    EXPECT_LE(got, hi + 1e-12);
    // Continuity: a tiny move changes the value by a tiny amount.
    const Vec3 q{std::min(p.x + 1e-7, d.nx - 1.0), p.y, p.z};
    EXPECT_NEAR(sample_trilinear(v, q, {}), got, 1e-6);
  }
}

TEST(Axis, ParseNames) {
  EXPECT_EQ(parse_axis("z"), Axis::Transverse);
  EXPECT_EQ(parse_axis("Transverse"), Axis::Transverse);
  EXPECT_EQ(parse_axis("x"), Axis::Sagittal);
  EXPECT_EQ(parse_axis("coronal"), Axis::Coronal);
  EXPECT_THROW(parse_axis("oblique"), Error);
}
