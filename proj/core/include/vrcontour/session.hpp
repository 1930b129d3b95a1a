// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vrcontour/brush.hpp"
#include "vrcontour/geometry.hpp"
#include "vrcontour/volume.hpp"

namespace vrc {

/// What a gaze ray hit, classified when the sample was captured.
enum class GazeHit { Tablet, Volume, None };

struct GazeSample {
  double t_ms = 0.0;
  Vec3 dir{0.0, 0.0, 1.0};
  GazeHit hit = GazeHit::None;
  friend constexpr bool operator==(GazeSample, GazeSample) = default;
};

enum class EventKind { Anchor, StrokeStart, StrokeEnd, SliceChange, Gaze, Interp, End };

struct SliceChange {
  Axis axis = Axis::Transverse;
  int index = 0;
  friend constexpr bool operator==(SliceChange, SliceChange) = default;
};

struct InterpRequest {
  Axis axis = Axis::Transverse;
  std::vector<int> keys;
  friend bool operator==(const InterpRequest&, const InterpRequest&) = default;
};

/// One line of a session log. Which payload is set depends on `kind`:
/// StrokeEnd may carry the finished stroke (it is applied when the pen
/// lifts), Gaze carries a sample, SliceChange a slice, Interp a request.
struct SessionEvent {
  double t_ms = 0.0;
  EventKind kind = EventKind::End;
  std::optional<BrushStroke> stroke;
  std::optional<GazeSample> gaze;
  std::optional<SliceChange> slice;
  std::optional<InterpRequest> interp;
  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

inline SessionEvent make_event(double t_ms, EventKind kind) {
  SessionEvent e;
  e.t_ms = t_ms;
  e.kind = kind;
  return e;
}

/// Append-only event stream of one contouring session. Events keep file
/// order (timestamps non-decreasing); the anchor is held apart.
struct SessionRecord {
  std::optional<double> anchor_ms;
  std::vector<SessionEvent> events;

  std::vector<GazeSample> gaze_samples() const;
  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

std::string_view to_string(EventKind kind);
std::string_view to_string(GazeHit hit);

/// Parses one JSON line; throws MalformedEvent naming the line number.
SessionEvent parse_event(std::string_view line, std::size_t line_number);
std::string to_json_line(const SessionEvent& event);

/// JSON-lines log. Blank lines are skipped. Throws MalformedEvent (with the
/// line number as field) on bad JSON, unknown kinds, missing payloads, or
/// timestamps that go backwards.
SessionRecord parse_session(std::istream& in);
SessionRecord parse_session(std::string_view text);

/// Appends `event` to `record`, enforcing the same ordering rules as parsing.
void append_event(SessionRecord& record, const SessionEvent& event, std::size_t line_number = 0);

std::string to_jsonl(const SessionRecord& record);

}  // namespace vrc
