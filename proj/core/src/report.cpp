// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/report.hpp"

#include <cstdio>

namespace vrc {

std::string attention_csv(const AttentionSeries& series) {
  std::string out = "progress,tablet_pct,volume_pct,frames,empty\n";
  char row[128];
  for (const AttentionPoint& p : series) {
    std::snprintf(row, sizeof row, "%d,%.4f,%.4f,%d,%d\n", p.progress, p.tablet_pct, p.volume_pct,
                  p.frames, p.empty ? 1 : 0);
    out += row;
  }
  return out;
}

Json metrics_summary(const SessionRecord& session, double threshold) {
  const TemporalMetrics times = temporal_metrics(session);
  const auto gaze = session.gaze_samples();
  const auto kept = filter_saccades(gaze, threshold);
  const AttentionSeries series = attention_series(session, kept);

  int empty = 0;
  double tablet = 0.0;
  double volume = 0.0;
  for (const AttentionPoint& p : series) {
    if (p.empty) {
      ++empty;
      continue;
    }
    tablet += p.tablet_pct;
    volume += p.volume_pct;
  }
  const int filled = static_cast<int>(series.size()) - empty;
  return {{"initial_exploration_ms", times.initial_exploration_ms},
          {"overall_tct_ms", times.overall_tct_ms},
          {"saccade_threshold_deg_s", threshold},
          {"gaze_samples", gaze.size()},
          {"retained_samples", kept.size()},
          {"empty_windows", empty},
          {"mean_tablet_pct", filled > 0 ? tablet / filled : 0.0},
          {"mean_volume_pct", filled > 0 ? volume / filled : 0.0}};
}

}  // namespace vrc
