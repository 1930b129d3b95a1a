// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "vrcontour/label_volume.hpp"
#include "vrcontour/pose.hpp"
#include "vrcontour/render.hpp"
#include "vrcontour/session.hpp"
#include "vrcontour/volume.hpp"

namespace vrc {

inline constexpr int kProjectFormatVersion = 1;

/// A contouring case: the volume, its named masks ("user", "reference"),
/// viewing state, and the session log the user mask derives from.
struct Project {
  Project(std::string project_id, Volume project_volume)
      : id(std::move(project_id)), volume(std::move(project_volume)) {}

  std::string id;
  Volume volume;
  std::map<std::string, LabelVolume> masks;
  TransferFunction transfer_function = TransferFunction::grayscale_ramp();
  DensityWindow window;
  Pose pose;
  SessionRecord session;

  friend bool operator==(const Project&, const Project&) = default;
};

/// A project with an empty "user" mask.
Project make_project(std::string id, Volume volume);

/// Writes `dir/project.json` plus volume.json/.raw, one `<name>.mask.json`
/// per mask and session.jsonl. Creates `dir` if needed. With
/// `include_volume` false the volume pair is left as it is on disk.
void save_project(const std::filesystem::path& dir, const Project& project,
                  bool include_volume = true);

/// Throws VersionMismatch, CorruptFile (naming the field or file),
/// DimensionMismatch when a mask does not fit the volume, IoError.
Project load_project(const std::filesystem::path& dir);

/// Rebuilds a mask from an empty one by applying, in order, every stroke
/// carried on stroke_end events and every interp event. `event_limit`
/// replays only that many leading events (undo). Throws MalformedEvent
/// with the log line number when an event cannot be applied.
LabelVolume replay_session(const Volume& volume, const SessionRecord& session,
                           std::optional<std::size_t> event_limit = std::nullopt);

inline LabelVolume replay_session(const Project& project, const SessionRecord& session,
                                  std::optional<std::size_t> event_limit = std::nullopt) {
  return replay_session(project.volume, session, event_limit);
}

/// Applies a single event's mask effect (no-op for non-mutating kinds).
void apply_event(LabelVolume& mask, const Volume& volume, const SessionEvent& event);

}  // namespace vrc
