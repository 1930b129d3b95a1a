// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "vrcontour/label_volume.hpp"
#include "vrcontour/session.hpp"

namespace vrc {

/// Dice similarity 2 * sum_i |X_i & Y_i| / (sum_i |X_i| + sum_i |Y_i|),
/// accumulated slice by slice along z. Two empty masks score 1.0.
/// Throws DimensionMismatch.
double dsc(const LabelVolume& x, const LabelVolume& y);

struct TemporalMetrics {
  /// Anchor to the first stroke_start.
  double initial_exploration_ms = 0.0;
  /// Anchor to the end event.
  double overall_tct_ms = 0.0;
};

/// Throws NoStroke, NoSessionEnd, or MalformedEvent when the log has no anchor.
TemporalMetrics temporal_metrics(const SessionRecord& session);

/// Angle between the two gaze directions in degrees per second.
/// Throws NonIncreasingTime unless b is strictly later than a.
double angular_speed(const GazeSample& a, const GazeSample& b);

inline constexpr double kSaccadeThresholdDegPerSec = 150.0;

/// Drops every sample whose angular speed from the sample before it (in the
/// input order) is at or above `threshold`. The first sample always stays.
std::vector<GazeSample> filter_saccades(std::span<const GazeSample> samples,
                                        double threshold = kSaccadeThresholdDegPerSec);

struct AttentionPoint {
  int progress = 0;  // percent of overall TCT, 1..100
  double tablet_pct = 0.0;
  double volume_pct = 0.0;
  int frames = 0;
  bool empty = false;  // no retained frames fell in this window
};

using AttentionSeries = std::vector<AttentionPoint>;

/// One point per 1% of overall TCT. Window p covers
/// [anchor + (p-1)% TCT, anchor + p% TCT); percentages are over the frames
/// that fall inside it. Gaze samples are taken from `gaze` as given (filter
/// saccades first).
AttentionSeries attention_series(const SessionRecord& session, std::span<const GazeSample> gaze);

/// filter_saccades on the session's gaze stream, then attention_series.
AttentionSeries analyze_gaze(const SessionRecord& session,
                             double threshold = kSaccadeThresholdDegPerSec);

}  // namespace vrc
