// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "vrcontour/metrics.hpp"
#include "vrcontour/serialization.hpp"

namespace vrc {

/// "progress,tablet_pct,volume_pct,frames,empty" header plus one row per window.
std::string attention_csv(const AttentionSeries& series);

/// {initial_exploration_ms, overall_tct_ms, saccade_threshold_deg_s,
///  gaze_samples, retained_samples, empty_windows, mean_tablet_pct,
///  mean_volume_pct}. Means are over non-empty windows. Throws like
/// temporal_metrics() when the session is incomplete.
Json metrics_summary(const SessionRecord& session, double threshold = kSaccadeThresholdDegPerSec);

}  // namespace vrc
