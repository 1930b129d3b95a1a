// SPDX-License-Identifier: Apache-2.0
// Regenerates the golden PNGs with the slow reference renderer (default
// 0.99 early termination):
//   vrcontour_make_goldens <output dir>
#include <filesystem>
#include <iostream>

#include "oracles.hpp"
#include "scenes.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: vrcontour_make_goldens <dir>\n";
    return 1;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  for (const vrc::golden::Scene& s : vrc::golden::scenes()) {
    const vrc::Camera& c = s.camera;
    const vrc::oracle::RefCamera ref{c.position(), c.view_dir(), c.up(), c.right(), c.width(), c.height(), c.world_width()};
    const vrc::Image img = vrc::oracle::reference_render(s.volume, s.tf, s.window, ref);
    vrc::write_png(dir / (s.name + ".png"), img);
    std::cout << s.name << ".png " << img.width << "x" << img.height << '\n';
  }
  return 0;
}
