// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "vrcontour/error.hpp"
#include "vrcontour/label_volume.hpp"

namespace vrc {

TransferFunction::TransferFunction(std::vector<ControlPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "transfer function needs at least two points",
                "points");
  }
  if (points_.front().density != 0.0 || points_.back().density != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "transfer function must span densities 0 to 1",
                "points");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const ControlPoint& p = points_[i];
    if (i > 0 && !(p.density > points_[i - 1].density)) {
      throw Error(ErrorCode::InvalidArgument, "control point densities must strictly increase",
                  "points");
    }
    for (double c : {p.color.r, p.color.g, p.color.b, p.alpha}) {
      if (!(c >= 0.0 && c <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "control point color/alpha outside [0, 1]",
                    "points");
      }
    }
  }
}

TransferFunction TransferFunction::grayscale_ramp() {
  return TransferFunction({{0.0, {0.0, 0.0, 0.0}, 0.0}, {1.0, {1.0, 1.0, 1.0}, 1.0}});
}

Rgba tf_eval(const TransferFunction& tf, double density) {
  const auto points = tf.points();
  const double d = std::clamp(density, 0.0, 1.0);
  const auto upper = std::upper_bound(points.begin(), points.end(), d,
                                      [](double v, const ControlPoint& p) { return v < p.density; });
  if (upper == points.end()) {
    const ControlPoint& p = points.back();
    return {p.color.r, p.color.g, p.color.b, p.alpha};
  }
  if (upper == points.begin()) {
    const ControlPoint& p = points.front();
    return {p.color.r, p.color.g, p.color.b, p.alpha};
  }
  const ControlPoint& p0 = *(upper - 1);
  const ControlPoint& p1 = *upper;
  const double t = (d - p0.density) / (p1.density - p0.density);
  return {std::lerp(p0.color.r, p1.color.r, t), std::lerp(p0.color.g, p1.color.g, t),
          std::lerp(p0.color.b, p1.color.b, t), std::lerp(p0.alpha, p1.alpha, t)};
}

namespace {

inline void accumulate(Rgba& acc, const Rgba& sample) {
  const double weight = (1.0 - acc.a) * sample.a;
  acc.r += weight * sample.r;
  acc.g += weight * sample.g;
  acc.b += weight * sample.b;
  acc.a += weight;
}

}  // namespace

Rgba composite_front_to_back(std::span<const Rgba> samples) {
  Rgba acc;
  for (const Rgba& s : samples) accumulate(acc, s);
  return acc;
}

Rgba over(const Rgba& front, const Rgba& back) {
  const double k = 1.0 - front.a;
  return {front.r + k * back.r, front.g + k * back.g, front.b + k * back.b, front.a + k * back.a};
}

Camera::Camera(Vec3 position, Vec3 view_dir, Vec3 up, int width, int height, double world_width)
    : position_(position), width_(width), height_(height), world_width_(world_width) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "image size must be at least 1x1", "size");
  }
  if (!(world_width > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "camera world width must be positive", "world_width");
  }
  if (!(norm(view_dir) > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "camera view direction is zero", "view_dir");
  }
  view_dir_ = normalized(view_dir);
  const Vec3 ortho_up = up - view_dir_ * dot(up, view_dir_);
  if (!(norm(ortho_up) > 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "camera up vector is parallel to the view direction",
                "up");
  }
  up_ = normalized(ortho_up);
  right_ = cross(view_dir_, up_);
}

Camera Camera::look_at(Vec3 eye, Vec3 target, Vec3 up, int width, int height, double world_width) {
  return Camera(eye, target - eye, up, width, height, world_width);
}

Ray Camera::pixel_ray(int px, int py) const {
  const double sx = ((px + 0.5) / width_ - 0.5) * world_width_;
  const double sy = (0.5 - (py + 0.5) / height_) * world_height();
  return {position_ + right_ * sx + up_ * sy, view_dir_};
}

Rgba cast_ray(const Volume& volume, const TransferFunction& tf, const DensityWindow& window,
              const Ray& ray, const RenderOptions& options, const LabelVolume* labels,
              Rgba label_tint) {
  const Vec3 extent = volume.extent_mm();
  double t_near = 0.0;
  double t_far = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    const double o = ray.origin[axis];
    const double d = ray.dir[axis];
    if (std::abs(d) < 1e-12) {
      if (o < 0.0 || o > extent[axis]) return {};
      continue;
    }
    double t0 = (0.0 - o) / d;
    double t1 = (extent[axis] - o) / d;
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
  }
  if (!(t_far >= t_near)) return {};

  const Vec3& spacing = volume.spacing();
  const Dims& dims = volume.dims();
  const int steps = std::max(options.steps, 1);
  const double span = t_far - t_near;
  Rgba acc;
  for (int k = 0; k < steps; ++k) {
    const double t = t_near + (k + 0.5) / steps * span;
    const Vec3 voxel = hadamard_div(ray.origin + ray.dir * t, spacing);
    Rgba sample = tf_eval(tf, sample_trilinear(volume, voxel, window));
    if (labels != nullptr && label_tint.a > 0.0) {
      const int x = static_cast<int>(std::lround(voxel.x));
      const int y = static_cast<int>(std::lround(voxel.y));
      const int z = static_cast<int>(std::lround(voxel.z));
      if (dims.contains(x, y, z) && labels->at(x, y, z)) {
        sample.r = std::lerp(sample.r, label_tint.r, label_tint.a);
        sample.g = std::lerp(sample.g, label_tint.g, label_tint.a);
        sample.b = std::lerp(sample.b, label_tint.b, label_tint.a);
      }
    }
    accumulate(acc, sample);
    if (options.early_termination && acc.a >= kEarlyTerminationAlpha) break;
  }
  return acc;
}

std::array<std::uint8_t, 4> to_rgba8(const Rgba& c) {
  const auto q = [](double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  };
  if (!(c.a > 0.0)) return {0, 0, 0, 0};
  return {q(c.r / c.a), q(c.g / c.a), q(c.b / c.a), q(c.a)};
}

Image render_image(const Volume& volume, const LabelVolume* labels, const TransferFunction& tf,
                   const DensityWindow& window, const Camera& camera, Rgba label_tint,
                   const RenderOptions& options) {
  if (labels != nullptr) check_same_grid(*labels, volume);
  validate(options.pose);

  Image image(camera.width(), camera.height());
  const Vec3 pivot = volume.extent_mm() * 0.5;
  const bool posed = !(options.pose == Pose{});

  const auto render_rows = [&](int row_begin, int row_end) {
    for (int py = row_begin; py < row_end; ++py) {
      for (int px = 0; px < camera.width(); ++px) {
        Ray ray = camera.pixel_ray(px, py);
        if (posed) {
          const Quaternion inv = options.pose.rotation.conjugate();
          ray.origin = pose_to_local(options.pose, pivot, ray.origin);
          ray.dir = normalized(inv.rotate(ray.dir));
        }
        const auto rgba = to_rgba8(cast_ray(volume, tf, window, ray, options, labels, label_tint));
        std::copy(rgba.begin(), rgba.end(), image.pixel(px, py));
      }
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1U, static_cast<unsigned>(camera.height()));
  if (threads == 1) {
    render_rows(0, camera.height());
    return image;
  }
  // Each worker owns a contiguous band of rows, so every pixel has one writer.
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) {
      const int begin = static_cast<int>(static_cast<long>(camera.height()) * i / threads);
      const int end = static_cast<int>(static_cast<long>(camera.height()) * (i + 1) / threads);
      workers.emplace_back(render_rows, begin, end);
    }
  }
  return image;
}

Image render_slice(const Volume& volume, const LabelVolume* labels, Axis axis, int index,
                   const DensityWindow& window, Rgba label_tint) {
  const Slice2D slice = extract_slice(volume, axis, index);
  Mask2D plane;
  if (labels != nullptr) {
    check_same_grid(*labels, volume);
    plane = mask_slice(*labels, axis, index);
  }
  Image image(slice.width, slice.height);
  for (int v = 0; v < slice.height; ++v) {
    for (int u = 0; u < slice.width; ++u) {
      const double g = apply_window(slice.at(u, v), window);
      double rgb[3] = {g, g, g};
      if (labels != nullptr && plane.at(u, v) != 0) {
        rgb[0] = std::lerp(g, label_tint.r, label_tint.a);
        rgb[1] = std::lerp(g, label_tint.g, label_tint.a);
        rgb[2] = std::lerp(g, label_tint.b, label_tint.a);
      }
      std::uint8_t* px = image.pixel(u, v);
      for (int c = 0; c < 3; ++c) px[c] = static_cast<std::uint8_t>(std::lround(rgb[c] * 255.0));
      px[3] = 255;
    }
  }
  return image;
}

}  // namespace vrc
