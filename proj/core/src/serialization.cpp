// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/serialization.hpp"

#include <string>

#include "vrcontour/error.hpp"

namespace vrc {

namespace {

double number(const Json& j, const char* field) {
  if (!j.is_number()) {
    throw Error(ErrorCode::InvalidArgument, std::string("'") + field + "' must be a number", field);
  }
  return j.get<double>();
}

int integer(const Json& j, const char* field) {
  if (!j.is_number_integer()) {
    throw Error(ErrorCode::InvalidArgument, std::string("'") + field + "' must be an integer", field);
  }
  return j.get<int>();
}

std::string text(const Json& j, const char* field) {
  if (!j.is_string()) {
    throw Error(ErrorCode::InvalidArgument, std::string("'") + field + "' must be a string", field);
  }
  return j.get<std::string>();
}

const Json& array_of(const Json& j, const char* field, std::size_t size = 0) {
  if (!j.is_array() || (size != 0 && j.size() != size)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("'") + field + "' must be an array" +
                    (size != 0 ? " of " + std::to_string(size) + " numbers" : ""),
                field);
  }
  return j;
}

}  // namespace

const Json& require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw Error(ErrorCode::InvalidArgument, std::string("missing '") + field + "'", field);
  }
  return j.at(field);
}

Json to_json(Vec2 v) { return Json::array({v.x, v.y}); }
Json to_json(Vec3 v) { return Json::array({v.x, v.y, v.z}); }

Vec2 vec2_from_json(const Json& j, const char* field) {
  array_of(j, field, 2);
  return {number(j[0], field), number(j[1], field)};
}

Vec3 vec3_from_json(const Json& j, const char* field) {
  array_of(j, field, 3);
  return {number(j[0], field), number(j[1], field), number(j[2], field)};
}

Json to_json(const BrushStroke& s) {
  Json j;
  j["tool"] = s.tool == BrushTool::Disc2D ? "disc2d" : "sphere3d";
  j["mode"] = s.mode == BrushMode::Paint ? "paint" : "erase";
  j["radius_mm"] = s.radius_mm;
  Json path = Json::array();
  if (s.tool == BrushTool::Disc2D) {
    j["axis"] = std::string(axis_letter(s.axis));
    j["slice"] = s.slice;
    for (const Vec2& p : s.plane_path) path.push_back(to_json(p));
  } else {
    for (const Vec3& p : s.space_path) path.push_back(to_json(p));
  }
  j["path"] = std::move(path);
  j["timestamp"] = s.timestamp_ms;
  return j;
}

BrushStroke stroke_from_json(const Json& j) {
  BrushStroke s;
  const std::string tool = text(require(j, "tool"), "tool");
  if (tool == "disc2d") {
    s.tool = BrushTool::Disc2D;
  } else if (tool == "sphere3d") {
    s.tool = BrushTool::Sphere3D;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown brush tool '" + tool + "'", "tool");
  }
  const std::string mode = j.contains("mode") ? text(j.at("mode"), "mode") : "paint";
  if (mode == "paint") {
    s.mode = BrushMode::Paint;
  } else if (mode == "erase") {
    s.mode = BrushMode::Erase;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown brush mode '" + mode + "'", "mode");
  }
  s.radius_mm = number(require(j, "radius_mm"), "radius_mm");
  const Json& path = array_of(require(j, "path"), "path");
  if (s.tool == BrushTool::Disc2D) {
    s.axis = parse_axis(text(require(j, "axis"), "axis"));
    s.slice = integer(require(j, "slice"), "slice");
    for (const Json& p : path) s.plane_path.push_back(vec2_from_json(p, "path"));
  } else {
    for (const Json& p : path) s.space_path.push_back(vec3_from_json(p, "path"));
  }
  if (j.contains("timestamp")) s.timestamp_ms = number(j.at("timestamp"), "timestamp");
  validate(s);
  return s;
}

Json to_json(const Pose& pose) {
  return {{"translation", to_json(pose.translation)},
          {"rotation", Json::array({pose.rotation.w, pose.rotation.x, pose.rotation.y,
                                    pose.rotation.z})},
          {"scale", pose.scale}};
}

Pose pose_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "pose must be a JSON object", "pose");
  Pose pose;
  if (j.contains("translation")) pose.translation = vec3_from_json(j.at("translation"), "translation");
  if (j.contains("rotation")) {
    const Json& q = array_of(j.at("rotation"), "rotation", 4);
    pose.rotation = {number(q[0], "rotation"), number(q[1], "rotation"), number(q[2], "rotation"),
                     number(q[3], "rotation")};
  }
  if (j.contains("scale")) pose.scale = number(j.at("scale"), "scale");
  validate(pose);
  return pose;
}

Json to_json(const TransferFunction& tf) {
  Json points = Json::array();
  for (const ControlPoint& p : tf.points()) {
    points.push_back({{"density", p.density},
                      {"color", Json::array({p.color.r, p.color.g, p.color.b})},
                      {"alpha", p.alpha}});
  }
  return {{"points", std::move(points)}};
}

TransferFunction transfer_function_from_json(const Json& j) {
  std::vector<ControlPoint> points;
  for (const Json& p : array_of(require(j, "points"), "points")) {
    const Vec3 c = vec3_from_json(require(p, "color"), "color");
    points.push_back({number(require(p, "density"), "density"), {c.x, c.y, c.z},
                      number(require(p, "alpha"), "alpha")});
  }
  return TransferFunction(std::move(points));
}

Json to_json(const DensityWindow& w) { return {{"lo", w.lo()}, {"hi", w.hi()}}; }

DensityWindow window_from_json(const Json& j) {
  return DensityWindow(number(require(j, "lo"), "lo"), number(require(j, "hi"), "hi"));
}

Json to_json(const ContourSet& contours) {
  Json out = Json::array();
  for (const auto& [slice, polygons] : contours.per_slice) {
    Json polys = Json::array();
    for (const Polygon& polygon : polygons) {
      Json vertices = Json::array();
      for (const Vec2& v : polygon.vertices) vertices.push_back(to_json(v));
      polys.push_back(std::move(vertices));
    }
    out.push_back({{"axis", std::string(axis_letter(contours.axis))},
                   {"slice", slice},
                   {"polygons", std::move(polys)}});
  }
  return out;
}

std::vector<BrushStroke> stroke_script_from_json(const Json& j) {
  const Json& list = j.is_object() ? require(j, "strokes") : j;
  std::vector<BrushStroke> strokes;
  for (const Json& s : array_of(list, "strokes")) strokes.push_back(stroke_from_json(s));
  return strokes;
}

Json stroke_script_to_json(const std::vector<BrushStroke>& strokes) {
  Json list = Json::array();
  for (const BrushStroke& s : strokes) list.push_back(to_json(s));
  return {{"strokes", std::move(list)}};
}

}  // namespace vrc
