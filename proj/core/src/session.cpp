// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/session.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vrcontour/error.hpp"
#include "vrcontour/serialization.hpp"

namespace vrc {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Anchor: return "anchor";
    case EventKind::StrokeStart: return "stroke_start";
    case EventKind::StrokeEnd: return "stroke_end";
    case EventKind::SliceChange: return "slice_change";
    case EventKind::Gaze: return "gaze";
    case EventKind::Interp: return "interp";
    case EventKind::End: return "end";
  }
  return "end";
}

std::string_view to_string(GazeHit hit) {
  switch (hit) {
    case GazeHit::Tablet: return "tablet";
    case GazeHit::Volume: return "volume";
    case GazeHit::None: return "none";
  }
  return "none";
}

std::vector<GazeSample> SessionRecord::gaze_samples() const {
  std::vector<GazeSample> out;
  for (const SessionEvent& e : events) {
    if (e.kind == EventKind::Gaze && e.gaze) out.push_back(*e.gaze);
  }
  return out;
}

namespace {

EventKind parse_kind(const std::string& kind) {
  for (EventKind k : {EventKind::Anchor, EventKind::StrokeStart, EventKind::StrokeEnd,
                      EventKind::SliceChange, EventKind::Gaze, EventKind::Interp, EventKind::End}) {
    if (to_string(k) == kind) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown event kind '" + kind + "'", "kind");
}

GazeHit parse_hit(const std::string& hit) {
  for (GazeHit h : {GazeHit::Tablet, GazeHit::Volume, GazeHit::None}) {
    if (to_string(h) == hit) return h;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown gaze target '" + hit + "'", "hit");
}

[[noreturn]] void malformed(std::size_t line_number, const std::string& why) {
  throw Error(ErrorCode::MalformedEvent,
              "session log line " + std::to_string(line_number) + ": " + why,
              std::to_string(line_number));
}

}  // namespace

SessionEvent parse_event(std::string_view line, std::size_t line_number) {
  try {
    const Json j = Json::parse(line);
    SessionEvent e;
    const Json& t = require(j, "t");
    if (!t.is_number()) malformed(line_number, "'t' must be a number");
    e.t_ms = t.get<double>();
    const Json& kind = require(j, "kind");
    if (!kind.is_string()) malformed(line_number, "'kind' must be a string");
    e.kind = parse_kind(kind.get<std::string>());
    switch (e.kind) {
      case EventKind::StrokeEnd:
        if (j.contains("stroke")) e.stroke = stroke_from_json(j.at("stroke"));
        break;
      case EventKind::Gaze: {
        GazeSample g;
        g.t_ms = e.t_ms;
        g.dir = vec3_from_json(require(j, "dir"), "dir");
        if (std::abs(norm(g.dir) - 1.0) > 1e-6) malformed(line_number, "gaze 'dir' is not unit length");
        const Json& hit = require(j, "hit");
        if (!hit.is_string()) malformed(line_number, "'hit' must be a string");
        g.hit = parse_hit(hit.get<std::string>());
        e.gaze = g;
        break;
      }
      case EventKind::SliceChange: {
        const Json& axis = require(j, "axis");
        const Json& index = require(j, "index");
        if (!axis.is_string() || !index.is_number_integer()) {
          malformed(line_number, "slice_change needs string 'axis' and integer 'index'");
        }
        e.slice = SliceChange{parse_axis(axis.get<std::string>()), index.get<int>()};
        break;
      }
      case EventKind::Interp: {
        const Json& axis = require(j, "axis");
        const Json& keys = require(j, "keys");
        if (!axis.is_string() || !keys.is_array()) {
          malformed(line_number, "interp needs string 'axis' and array 'keys'");
        }
        InterpRequest req{parse_axis(axis.get<std::string>()), {}};
        for (const Json& k : keys) {
          if (!k.is_number_integer()) malformed(line_number, "interp keys must be integers");
          req.keys.push_back(k.get<int>());
        }
        e.interp = std::move(req);
        break;
      }
      default:
        break;
    }
    return e;
  } catch (const Json::exception& ex) {
    malformed(line_number, ex.what());
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::MalformedEvent) throw;
    malformed(line_number, ex.what());
  }
}

std::string to_json_line(const SessionEvent& e) {
  Json j;
  j["t"] = e.t_ms;
  j["kind"] = std::string(to_string(e.kind));
  if (e.stroke) j["stroke"] = to_json(*e.stroke);
  if (e.gaze) {
    j["dir"] = to_json(e.gaze->dir);
    j["hit"] = std::string(to_string(e.gaze->hit));
  }
  if (e.slice) {
    j["axis"] = std::string(axis_letter(e.slice->axis));
    j["index"] = e.slice->index;
  }
  if (e.interp) {
    j["axis"] = std::string(axis_letter(e.interp->axis));
    j["keys"] = e.interp->keys;
  }
  return j.dump();
}

void append_event(SessionRecord& record, const SessionEvent& event, std::size_t line_number) {
  const std::size_t where = line_number != 0 ? line_number : record.events.size() + 1;
  double last = record.anchor_ms.value_or(-std::numeric_limits<double>::infinity());
  if (!record.events.empty()) last = std::max(last, record.events.back().t_ms);
  if (event.kind == EventKind::Anchor) {
    if (record.anchor_ms) malformed(where, "second anchor event");
    if (!record.events.empty()) malformed(where, "anchor must precede all other events");
    record.anchor_ms = event.t_ms;
    return;
  }
  if (event.t_ms < last) malformed(where, "timestamps must not decrease");
  record.events.push_back(event);
}

SessionRecord parse_session(std::istream& in) {
  SessionRecord record;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    append_event(record, parse_event(line, line_number), line_number);
  }
  return record;
}

SessionRecord parse_session(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_session(in);
}

std::string to_jsonl(const SessionRecord& record) {
  std::string out;
  if (record.anchor_ms) {
    SessionEvent anchor;
    anchor.t_ms = *record.anchor_ms;
    anchor.kind = EventKind::Anchor;
    out += to_json_line(anchor);
    out += '\n';
  }
  for (const SessionEvent& e : record.events) {
    out += to_json_line(e);
    out += '\n';
  }
  return out;
}

}  // namespace vrc
