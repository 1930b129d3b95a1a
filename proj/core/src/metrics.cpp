// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "vrcontour/error.hpp"

namespace vrc {

double dsc(const LabelVolume& x, const LabelVolume& y) {
  if (!(x.dims() == y.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "DSC needs masks of equal dims", "dims");
  }
  const Dims& d = x.dims();
  const std::size_t plane = static_cast<std::size_t>(d.nx) * d.ny;
  const auto xb = x.bits();
  const auto yb = y.bits();
  std::uint64_t overlap = 0;
  std::uint64_t size_x = 0;
  std::uint64_t size_y = 0;
  for (int z = 0; z < d.nz; ++z) {
    const std::size_t begin = plane * static_cast<std::size_t>(z);
    for (std::size_t i = begin; i < begin + plane; ++i) {
      overlap += xb[i] & yb[i];
      size_x += xb[i];
      size_y += yb[i];
    }
  }
  if (size_x + size_y == 0) return 1.0;
  return 2.0 * static_cast<double>(overlap) / static_cast<double>(size_x + size_y);
}

TemporalMetrics temporal_metrics(const SessionRecord& session) {
  if (!session.anchor_ms) {
    throw Error(ErrorCode::MalformedEvent, "session has no anchor event", "anchor");
  }
  std::optional<double> first_stroke;
  std::optional<double> end;
  for (const SessionEvent& e : session.events) {
    if (e.kind == EventKind::StrokeStart && !first_stroke) first_stroke = e.t_ms;
    if (e.kind == EventKind::End && !end) end = e.t_ms;
  }
  if (!end) throw Error(ErrorCode::NoSessionEnd, "session has no end event", "end");
  if (!first_stroke || *first_stroke > *end) {
    throw Error(ErrorCode::NoStroke, "session has no stroke before its end", "stroke_start");
  }
  return {*first_stroke - *session.anchor_ms, *end - *session.anchor_ms};
}

double angular_speed(const GazeSample& a, const GazeSample& b) {
  if (!(b.t_ms > a.t_ms)) {
    throw Error(ErrorCode::NonIncreasingTime, "gaze samples must have increasing timestamps", "t");
  }
  const double cosine = std::clamp(dot(a.dir, b.dir), -1.0, 1.0);
  const double degrees = std::acos(cosine) * 180.0 / std::numbers::pi;
  return degrees / ((b.t_ms - a.t_ms) / 1000.0);
}

std::vector<GazeSample> filter_saccades(std::span<const GazeSample> samples, double threshold) {
  std::vector<GazeSample> kept;
  if (samples.empty()) return kept;
  kept.push_back(samples.front());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (angular_speed(samples[i - 1], samples[i]) < threshold) kept.push_back(samples[i]);
  }
  return kept;
}

AttentionSeries attention_series(const SessionRecord& session, std::span<const GazeSample> gaze) {
  const TemporalMetrics times = temporal_metrics(session);
  const double anchor = *session.anchor_ms;
  const double tct = times.overall_tct_ms;

  struct Counts {
    int frames = 0;
    int tablet = 0;
    int volume = 0;
  };
  std::vector<Counts> windows(100);
  if (tct > 0.0) {
    for (const GazeSample& g : gaze) {
      const double offset = g.t_ms - anchor;
      if (offset < 0.0 || offset >= tct) continue;
      const auto w = std::min<std::size_t>(99, static_cast<std::size_t>(offset * 100.0 / tct));
      ++windows[w].frames;
      if (g.hit == GazeHit::Tablet) ++windows[w].tablet;
      if (g.hit == GazeHit::Volume) ++windows[w].volume;
    }
  }

  AttentionSeries series;
  series.reserve(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const Counts& c = windows[i];
    AttentionPoint p;
    p.progress = static_cast<int>(i) + 1;
    p.frames = c.frames;
    p.empty = c.frames == 0;
    if (!p.empty) {
      p.tablet_pct = 100.0 * c.tablet / c.frames;
      p.volume_pct = 100.0 * c.volume / c.frames;
    }
    series.push_back(p);
  }
  return series;
}

AttentionSeries analyze_gaze(const SessionRecord& session, double threshold) {
  const auto gaze = session.gaze_samples();
  const auto kept = filter_saccades(gaze, threshold);
  return attention_series(session, kept);
}

}  // namespace vrc
