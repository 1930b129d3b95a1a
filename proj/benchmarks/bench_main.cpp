// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "vrcontour/brush.hpp"
#include "vrcontour/contours.hpp"
#include "vrcontour/interp.hpp"
#include "vrcontour/metrics.hpp"
#include "vrcontour/render.hpp"
#include "vrcontour/workflow.hpp"

using namespace vrc;

namespace {

const Phantom& ellipsoid(int n) {
  static std::map<int, Phantom> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const double r = n * 0.35;
    it = cache.emplace(n, ellipsoid_phantom({n, n, n}, {1, 1, 1}, {r, r * 0.8, r * 1.1})).first;
  }
  return it->second;
}

void BM_RenderImage(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int size = static_cast<int>(state.range(1));
  const Phantom& p = ellipsoid(n);
  const Vec3 c = volume_center(p.volume);
  const Camera cam = Camera::look_at(c + Vec3{n * 0.8, n * 0.6, n * 1.2}, c, {0, 1, 0}, size, size, n * 1.6);
  const TransferFunction tf({{0.0, {0, 0, 0}, 0.0}, {0.5, {1, 0.6, 0.3}, 0.02}, {1.0, {1, 1, 1}, 0.05}});
  RenderOptions o;
  o.threads = 0;
  for (auto _ : state) benchmark::DoNotOptimize(render_image(p.volume, nullptr, tf, {}, cam, {}, o));
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_RenderImage)->Args({64, 128})->Args({128, 256})->Args({256, 512})->Unit(benchmark::kMillisecond);

void BM_PaintSphere(benchmark::State& state) {
  const Phantom& p = ellipsoid(128);
  LabelVolume m(p.volume.dims());
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) {
    paint_sphere(m, p.volume, {64, 64, 64}, r, BrushMode::Paint);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_PaintSphere)->Arg(4)->Arg(16)->Arg(40);

void BM_Dice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Phantom& p = ellipsoid(n);
  LabelVolume other = p.reference;
  paint_sphere(other, p.volume, volume_center(p.volume) + Vec3{n * 0.1, 0, 0}, n * 0.3, BrushMode::Paint);
  for (auto _ : state) benchmark::DoNotOptimize(dsc(p.reference, other));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(p.volume.dims().voxel_count()));
}
BENCHMARK(BM_Dice)->Arg(64)->Arg(128)->Arg(256);

void BM_SignedDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Phantom& p = ellipsoid(n);
  const Mask2D plane = mask_slice(p.reference, Axis::Transverse, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(signed_distance(plane, {1, 1}));
}
BENCHMARK(BM_SignedDistance)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_InterpolateSlices(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Phantom& p = ellipsoid(n);
  const std::vector<int> keys = key_slices(p.reference, Axis::Transverse, 6);
  for (auto _ : state) {
    LabelVolume m = p.reference;
    interpolate_slices(m, Axis::Transverse, keys);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_InterpolateSlices)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ExtractContours(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Phantom& p = ellipsoid(n);
  const Mask2D plane = mask_slice(p.reference, Axis::Transverse, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(extract_contours(plane, {1, 1}));
}
BENCHMARK(BM_ExtractContours)->Arg(64)->Arg(256);

void BM_FilterSaccades(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> jitter(0.0, 0.01);
  std::vector<GazeSample> g(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = {i * 1000.0 / 90.0, normalized({jitter(rng), jitter(rng), 1.0}), GazeHit::Tablet};
  for (auto _ : state) benchmark::DoNotOptimize(filter_saccades(g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterSaccades)->Arg(54000);

}  // namespace
BENCHMARK_MAIN();
