// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include "vrcontour/brush.hpp"
#include "vrcontour/contours.hpp"
#include "vrcontour/pose.hpp"
#include "vrcontour/render.hpp"
#include "vrcontour/volume.hpp"

// JSON shapes shared by the files on disk, the HTTP payloads and the CLI.
// Readers throw vrc::Error(InvalidArgument) naming the offending key.

namespace vrc {

using Json = nlohmann::json;

Json to_json(Vec2 v);
Json to_json(Vec3 v);
Json to_json(const BrushStroke& stroke);
Json to_json(const Pose& pose);
Json to_json(const TransferFunction& tf);
Json to_json(const DensityWindow& window);
Json to_json(const ContourSet& contours);

Vec2 vec2_from_json(const Json& j, const char* field);
Vec3 vec3_from_json(const Json& j, const char* field);
BrushStroke stroke_from_json(const Json& j);
Pose pose_from_json(const Json& j);
TransferFunction transfer_function_from_json(const Json& j);
DensityWindow window_from_json(const Json& j);

/// A stroke script is either a bare array of strokes or {"strokes": [...]}.
std::vector<BrushStroke> stroke_script_from_json(const Json& j);
Json stroke_script_to_json(const std::vector<BrushStroke>& strokes);

/// Fetches a required member; throws InvalidArgument naming it when absent.
const Json& require(const Json& j, const char* field);

}  // namespace vrc
