// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/workflow.hpp"

#include <algorithm>
#include <cmath>

#include "vrcontour/error.hpp"
#include "vrcontour/project.hpp"

namespace vrc {

Vec3 volume_center(const Volume& volume) { return volume.extent_mm() * 0.5; }

Phantom cube_phantom(int n, Vec3 spacing, double half_fraction) {
  if (n < 2 || !(half_fraction > 0.0 && half_fraction < 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "cube phantom needs n >= 2 and 0 < half_fraction < 0.5", "n");
  }
  const Dims dims{n, n, n};
  std::vector<double> raw(dims.voxel_count(), 0.0);
  LabelVolume reference(dims);
  const Vec3 extent{(n - 1) * spacing.x, (n - 1) * spacing.y, (n - 1) * spacing.z};
  const Vec3 center = extent * 0.5;
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const Vec3 p{x * spacing.x, y * spacing.y, z * spacing.z};
        bool inside = true;
        for (int a = 0; a < 3; ++a) inside = inside && std::abs(p[a] - center[a]) <= half_fraction * extent[a];
        if (inside) {
          raw[dims.index(x, y, z)] = 1.0;
          reference.set(x, y, z, true);
        }
      }
    }
  }
  return {normalize_minmax(raw, dims, spacing), std::move(reference)};
}

Phantom ellipsoid_phantom(Dims dims, Vec3 spacing, Vec3 radii_mm) {
  if (!(radii_mm.x > 0.0 && radii_mm.y > 0.0 && radii_mm.z > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ellipsoid radii must be positive", "radii_mm");
  }
  std::vector<double> raw(dims.voxel_count(), 0.0);
  LabelVolume reference(dims);
  const Vec3 center{(dims.nx - 1) * spacing.x * 0.5, (dims.ny - 1) * spacing.y * 0.5,
                    (dims.nz - 1) * spacing.z * 0.5};
  bool any = false;
  for (int z = 0; z < dims.nz; ++z) {
    for (int y = 0; y < dims.ny; ++y) {
      for (int x = 0; x < dims.nx; ++x) {
        const Vec3 d = hadamard_div(Vec3{x * spacing.x, y * spacing.y, z * spacing.z} - center, radii_mm);
        const double q = dot(d, d);
        if (q <= 1.0) {
          raw[dims.index(x, y, z)] = 1.0 - 0.5 * q;
          reference.set(x, y, z, true);
          any = true;
        }
      }
    }
  }
  if (!any) throw Error(ErrorCode::InvalidArgument, "ellipsoid covers no voxel center", "radii_mm");
  return {normalize_minmax(raw, dims, spacing), std::move(reference)};
}

std::vector<BrushStroke> refine_strokes(const Mask2D& current, const Mask2D& target) {
  if (current.width != target.width || current.height != target.height) {
    throw Error(ErrorCode::DimensionMismatch, "refinement planes differ in size", "plane");
  }
  const Vec2 s = target.spacing;
  const double radius = 0.45 * std::min(s.x, s.y);
  std::vector<BrushStroke> strokes;
  const auto emit = [&](int v, int u0, int u1, BrushMode mode) {
    BrushStroke stroke;
    stroke.tool = BrushTool::Disc2D;
    stroke.mode = mode;
    stroke.radius_mm = radius;
    stroke.axis = target.axis;
    stroke.slice = target.index;
    stroke.plane_path = {{u0 * s.x, v * s.y}, {u1 * s.x, v * s.y}};
    strokes.push_back(std::move(stroke));
  };
  for (BrushMode mode : {BrushMode::Erase, BrushMode::Paint}) {
    const std::uint8_t want = mode == BrushMode::Paint ? 1 : 0;
    for (int v = 0; v < target.height; ++v) {
      int u = 0;
      while (u < target.width) {
        const auto wrong = [&](int k) { return target.at(k, v) == want && current.at(k, v) != want; };
        if (!wrong(u)) {
          ++u;
          continue;
        }
        int end = u;
        while (end + 1 < target.width && target.at(end + 1, v) == want) ++end;
        emit(v, u, end, mode);
        u = end + 1;
      }
    }
  }
  return strokes;
}

ScriptedSession::ScriptedSession(const Volume& volume, double first_stroke_ms)
    : volume_(volume), mask_(volume.dims()), clock_ms_(first_stroke_ms) {
  record_.anchor_ms = 0.0;
}

void ScriptedSession::stroke(BrushStroke stroke) {
  SessionEvent start = make_event(clock_ms_, EventKind::StrokeStart);
  append_event(record_, start);
  clock_ms_ += 400.0;
  stroke.timestamp_ms = clock_ms_;
  SessionEvent end = make_event(clock_ms_, EventKind::StrokeEnd);
  end.stroke = std::move(stroke);
  apply_event(mask_, volume_, end);
  append_event(record_, end);
  clock_ms_ += 100.0;
}

void ScriptedSession::interpolate(Axis axis, std::vector<int> keys) {
  SessionEvent e = make_event(clock_ms_, EventKind::Interp);
  e.interp = InterpRequest{axis, std::move(keys)};
  apply_event(mask_, volume_, e);
  append_event(record_, e);
  clock_ms_ += 1000.0;
}

void ScriptedSession::refine(Axis axis, int index, const Mask2D& target) {
  SessionEvent change = make_event(clock_ms_, EventKind::SliceChange);
  change.slice = SliceChange{axis, index};
  append_event(record_, change);
  clock_ms_ += 250.0;
  for (BrushStroke& s : refine_strokes(mask_slice(mask_, axis, index, volume_.spacing()), target)) {
    stroke(std::move(s));
  }
}

SessionRecord ScriptedSession::finish() {
  append_event(record_, make_event(clock_ms_, EventKind::End));
  return record_;
}

std::vector<int> nonempty_slices(const LabelVolume& mask, Axis axis) {
  const int n = mask.dims()[plane_axes(axis).w];
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    const Mask2D plane = mask_slice(mask, axis, i);
    if (std::any_of(plane.values.begin(), plane.values.end(), [](std::uint8_t b) { return b != 0; })) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<int> key_slices(const LabelVolume& mask, Axis axis, int step) {
  if (step < 1) throw Error(ErrorCode::InvalidArgument, "key step must be >= 1", "key_step");
  const std::vector<int> planes = nonempty_slices(mask, axis);
  std::vector<int> keys;
  for (std::size_t i = 0; i < planes.size(); i += static_cast<std::size_t>(step)) keys.push_back(planes[i]);
  if (!planes.empty() && keys.back() != planes.back()) keys.push_back(planes.back());
  return keys;
}

namespace {

double plane_dice(const Mask2D& a, const Mask2D& b) {
  std::size_t both = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    both += (a.values[i] & b.values[i]) != 0;
    total += (a.values[i] != 0) + (b.values[i] != 0);
  }
  return total == 0 ? 1.0 : 2.0 * static_cast<double>(both) / static_cast<double>(total);
}

void trace_keys(ScriptedSession& script, const Phantom& phantom, Axis axis, const std::vector<int>& keys) {
  for (int k : keys) script.refine(axis, k, mask_slice(phantom.reference, axis, k, phantom.volume.spacing()));
}

}  // namespace

SessionRecord c2_session(const Phantom& phantom, Axis axis, int key_step) {
  ScriptedSession script(phantom.volume);
  const std::vector<int> keys = key_slices(phantom.reference, axis, key_step);
  trace_keys(script, phantom, axis, keys);
  if (keys.size() >= 2) script.interpolate(axis, keys);
  return script.finish();
}

SessionRecord c4_session(const Phantom& phantom, Axis axis, int key_step) {
  ScriptedSession script(phantom.volume);
  const Volume& volume = phantom.volume;
  const Vec3& s = volume.spacing();

  // Bounding box of the structure in mm gives the sphere rough-in.
  Vec3 lo{1e300, 1e300, 1e300};
  Vec3 hi{-1e300, -1e300, -1e300};
  const Dims& d = volume.dims();
  for (int z = 0; z < d.nz; ++z) {
    for (int y = 0; y < d.ny; ++y) {
      for (int x = 0; x < d.nx; ++x) {
        if (!phantom.reference.at(x, y, z)) continue;
        const Vec3 p{x * s.x, y * s.y, z * s.z};
        for (int a = 0; a < 3; ++a) {
          lo[a] = std::min(lo[a], p[a]);
          hi[a] = std::max(hi[a], p[a]);
        }
      }
    }
  }
  if (lo.x > hi.x) return script.finish();

  const Vec3 center = (lo + hi) * 0.5;
  const Vec3 half = (hi - lo) * 0.5;
  const PlaneAxes pa = plane_axes(axis);
  const double radius = std::max(0.6 * std::min(half[pa.u], half[pa.v]), 0.5 * std::max({s.x, s.y, s.z}));
  Vec3 a = center;
  Vec3 b = center;
  a[pa.w] -= std::max(0.0, half[pa.w] - radius);
  b[pa.w] += std::max(0.0, half[pa.w] - radius);
  BrushStroke rough;
  rough.tool = BrushTool::Sphere3D;
  rough.radius_mm = radius;
  rough.space_path = {a, b};
  script.stroke(std::move(rough));

  const std::vector<int> keys = key_slices(phantom.reference, axis, key_step);
  trace_keys(script, phantom, axis, keys);
  if (keys.size() >= 2) script.interpolate(axis, keys);

  for (int i : nonempty_slices(phantom.reference, axis)) {
    const Mask2D target = mask_slice(phantom.reference, axis, i, s);
    if (plane_dice(mask_slice(script.mask(), axis, i, s), target) < 0.9) script.refine(axis, i, target);
  }
  return script.finish();
}

std::vector<BrushStroke> sphere_script(const Volume& volume, double radius_mm) {
  BrushStroke stroke;
  stroke.tool = BrushTool::Sphere3D;
  stroke.radius_mm = radius_mm;
  stroke.space_path = {volume_center(volume)};
  return {stroke};
}

}  // namespace vrc
