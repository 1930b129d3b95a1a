// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vrcontour/geometry.hpp"
#include "vrcontour/image.hpp"
#include "vrcontour/pose.hpp"
#include "vrcontour/volume.hpp"

namespace vrc {

class LabelVolume;

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  friend constexpr bool operator==(Rgb, Rgb) = default;
};

/// Color plus opacity. Transfer-function output carries straight (not
/// premultiplied) color; compositing results carry accumulated color, i.e.
/// color already weighted by the opacity it was composited with.
struct Rgba {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  double a = 0.0;
  friend constexpr bool operator==(Rgba, Rgba) = default;
};

struct ControlPoint {
  double density = 0.0;
  Rgb color;
  double alpha = 0.0;
  friend constexpr bool operator==(ControlPoint, ControlPoint) = default;
};

/// Piecewise-linear density -> RGBA map. At least two points, strictly
/// increasing densities, the first at 0 and the last at 1.
class TransferFunction {
 public:
  explicit TransferFunction(std::vector<ControlPoint> points);

  /// Black/transparent at 0 to white/opaque at 1.
  static TransferFunction grayscale_ramp();

  std::span<const ControlPoint> points() const noexcept { return points_; }
  friend bool operator==(const TransferFunction&, const TransferFunction&) = default;

 private:
  std::vector<ControlPoint> points_;
};

Rgba tf_eval(const TransferFunction& tf, double density);

/// Front-to-back over accumulation starting from transparent black:
/// C += (1 - A) a_i c_i, A += (1 - A) a_i. Samples run nearest first.
Rgba composite_front_to_back(std::span<const Rgba> samples);

/// Porter-Duff over of two accumulated results: `front` over `back`.
Rgba over(const Rgba& front, const Rgba& back);

/// Orthographic camera. `view_dir` and `up` are orthonormalized on
/// construction; `right` completes the frame.
class Camera {
 public:
  Camera(Vec3 position, Vec3 view_dir, Vec3 up, int width, int height, double world_width);

  static Camera look_at(Vec3 eye, Vec3 target, Vec3 up, int width, int height,
                        double world_width);

  const Vec3& position() const noexcept { return position_; }
  const Vec3& view_dir() const noexcept { return view_dir_; }
  const Vec3& up() const noexcept { return up_; }
  const Vec3& right() const noexcept { return right_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double world_width() const noexcept { return world_width_; }
  double world_height() const noexcept { return world_width_ * height_ / width_; }

  /// Ray through the center of pixel (px, py); row 0 is the top of the image.
  Ray pixel_ray(int px, int py) const;

 private:
  Vec3 position_;
  Vec3 view_dir_;
  Vec3 up_;
  Vec3 right_;
  int width_;
  int height_;
  double world_width_;
};

inline constexpr int kDefaultRaySteps = 256;
inline constexpr double kEarlyTerminationAlpha = 0.99;

struct RenderOptions {
  int steps = kDefaultRaySteps;
  bool early_termination = true;
  /// Worker threads for render_image; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  Pose pose;
};

/// One ray: clip against the volume's bounding box (in volume-local mm),
/// take `steps` equally spaced samples on the clipped segment, classify each
/// with tf(window(trilinear)), composite front to back. Labeled samples have
/// their color blended toward `label_tint.rgb` by `label_tint.a` first.
/// `ray` is given in volume-local mm (apply the pose before calling).
Rgba cast_ray(const Volume& volume, const TransferFunction& tf, const DensityWindow& window,
              const Ray& ray, const RenderOptions& options = {},
              const LabelVolume* labels = nullptr, Rgba label_tint = {});

/// Casts one ray per pixel. Output pixels hold straight 8-bit color and alpha.
/// Throws DimensionMismatch if `labels` does not match the volume.
Image render_image(const Volume& volume, const LabelVolume* labels, const TransferFunction& tf,
                   const DensityWindow& window, const Camera& camera, Rgba label_tint,
                   const RenderOptions& options = {});

/// Grayscale view of one cutting plane, windowed, with labeled voxels
/// blended toward `label_tint.rgb` by `label_tint.a`. Pixel (u, v) of the
/// plane lands at column u, row v; alpha is opaque.
Image render_slice(const Volume& volume, const LabelVolume* labels, Axis axis, int index,
                   const DensityWindow& window, Rgba label_tint);

/// Quantizes an accumulated RGBA to straight 8-bit RGBA.
std::array<std::uint8_t, 4> to_rgba8(const Rgba& accumulated);

}  // namespace vrc
