// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/project.hpp"

#include <algorithm>

#include "vrcontour/brush.hpp"
#include "vrcontour/error.hpp"
#include "vrcontour/interp.hpp"
#include "vrcontour/io.hpp"
#include "vrcontour/serialization.hpp"

namespace fs = std::filesystem;

namespace vrc {

namespace {

bool valid_mask_name(const std::string& name) {
  return !name.empty() && name.size() <= 64 && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
  });
}

std::string string_field(const Json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_string()) {
    throw Error(ErrorCode::CorruptFile, std::string("project.json: '") + field + "' must be a string",
                field);
  }
  return j.at(field).get<std::string>();
}

// File references must stay inside the project directory.
fs::path member_file(const fs::path& dir, const std::string& name, const char* field) {
  const fs::path rel(name);
  if (rel.empty() || rel.is_absolute() || rel.has_parent_path()) {
    throw Error(ErrorCode::CorruptFile, std::string("project.json: bad file name in '") + field + "'",
                field);
  }
  return dir / rel;
}

template <typename F>
auto metadata(const char* field, F&& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidArgument) throw;
    throw Error(ErrorCode::CorruptFile, std::string("project.json: ") + e.what(), field);
  }
}

}  // namespace

Project make_project(std::string id, Volume volume) {
  Project p(std::move(id), std::move(volume));
  p.masks.emplace("user", LabelVolume(p.volume.dims()));
  return p;
}

void save_project(const fs::path& dir, const Project& project, bool include_volume) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message(), dir.string());

  Json masks = Json::object();
  for (const auto& [name, mask] : project.masks) {
    if (!valid_mask_name(name)) {
      throw Error(ErrorCode::InvalidArgument, "mask name '" + name + "' is not a plain identifier", "masks");
    }
    check_same_grid(mask, project.volume);
    const std::string file = name + ".mask.json";
    save_mask(dir / file, mask);
    masks[name] = file;
  }
  if (include_volume) save_volume(dir / "volume.json", project.volume);
  write_text(dir / "session.jsonl", to_jsonl(project.session));

  const Json meta = {{"version", kProjectFormatVersion},
                     {"id", project.id},
                     {"volume", "volume.json"},
                     {"masks", masks},
                     {"transfer_function", to_json(project.transfer_function)},
                     {"window", to_json(project.window)},
                     {"pose", to_json(project.pose)},
                     {"session", "session.jsonl"}};
  write_text(dir / "project.json", meta.dump(2) + "\n");
}

Project load_project(const fs::path& dir) {
  const Json meta = read_json(dir / "project.json");
  if (!meta.is_object()) throw Error(ErrorCode::CorruptFile, "project.json must be an object", "project.json");
  if (!meta.contains("version") || !meta.at("version").is_number_integer()) {
    throw Error(ErrorCode::CorruptFile, "project.json: 'version' must be an integer", "version");
  }
  if (meta.at("version").get<long long>() != kProjectFormatVersion) {
    throw Error(ErrorCode::VersionMismatch,
                "project format version " + meta.at("version").dump() + ", expected " +
                    std::to_string(kProjectFormatVersion),
                "version");
  }

  Project project(string_field(meta, "id"),
                  load_volume(member_file(dir, string_field(meta, "volume"), "volume")));

  if (!meta.contains("masks") || !meta.at("masks").is_object()) {
    throw Error(ErrorCode::CorruptFile, "project.json: 'masks' must be an object", "masks");
  }
  for (const auto& [name, file] : meta.at("masks").items()) {
    if (!valid_mask_name(name) || !file.is_string()) {
      throw Error(ErrorCode::CorruptFile, "project.json: bad mask entry '" + name + "'", "masks");
    }
    LabelVolume mask = load_mask(member_file(dir, file.get<std::string>(), "masks"));
    if (!(mask.dims() == project.volume.dims())) {
      throw Error(ErrorCode::DimensionMismatch, "mask '" + name + "' does not match the volume dims",
                  "masks." + name);
    }
    project.masks.emplace(name, std::move(mask));
  }

  project.transfer_function =
      metadata("transfer_function", [&] { return transfer_function_from_json(require(meta, "transfer_function")); });
  project.window = metadata("window", [&] { return window_from_json(require(meta, "window")); });
  project.pose = metadata("pose", [&] { return pose_from_json(require(meta, "pose")); });
  project.session = parse_session(read_text(member_file(dir, string_field(meta, "session"), "session")));
  return project;
}

void apply_event(LabelVolume& mask, const Volume& volume, const SessionEvent& event) {
  if (event.kind == EventKind::StrokeEnd && event.stroke) {
    apply_stroke(mask, volume, *event.stroke);
  } else if (event.kind == EventKind::Interp && event.interp) {
    interpolate_slices(mask, event.interp->axis, event.interp->keys, volume.spacing());
  }
}

LabelVolume replay_session(const Volume& volume, const SessionRecord& session,
                           std::optional<std::size_t> event_limit) {
  LabelVolume mask(volume.dims());
  const std::size_t count = std::min(session.events.size(), event_limit.value_or(session.events.size()));
  const std::size_t first_line = session.anchor_ms ? 2 : 1;
  for (std::size_t i = 0; i < count; ++i) {
    try {
      apply_event(mask, volume, session.events[i]);
    } catch (const Error& e) {
      const std::string line = std::to_string(first_line + i);
      throw Error(ErrorCode::MalformedEvent, "session log line " + line + ": " + e.what(), line);
    }
  }
  return mask;
}

}  // namespace vrc
