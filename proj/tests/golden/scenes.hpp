// SPDX-License-Identifier: Apache-2.0
// Fixed scenes whose renders are checked in as PNG goldens.
#pragma once

#include <string>
#include <vector>

#include "vrcontour/render.hpp"
#include "vrcontour/workflow.hpp"

namespace vrc::golden {

struct Scene {
  std::string name;
  Volume volume;
  std::vector<ControlPoint> tf;
  DensityWindow window;
  Camera camera;
};

std::vector<Scene> scenes();

}  // namespace vrc::golden
