// SPDX-License-Identifier: Apache-2.0
// vrcontour: command line front end for the contouring core.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "vrcontour/brush.hpp"
#include "vrcontour/error.hpp"
#include "vrcontour/interp.hpp"
#include "vrcontour/io.hpp"
#include "vrcontour/metrics.hpp"
#include "vrcontour/project.hpp"
#include "vrcontour/render.hpp"
#include "vrcontour/report.hpp"
#include "vrcontour/serialization.hpp"
#include "vrcontour/service.hpp"
#include "vrcontour/workflow.hpp"

namespace fs = std::filesystem;
using namespace vrc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

bool g_json = false;

Vec3 vec3_of(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }

void emit(const Json& result, const std::string& text) {
  if (g_json) {
    std::cout << result.dump() << '\n';
  } else if (!text.empty()) {
    std::cout << text << '\n';
  }
}

DensityWindow window_of(const std::vector<double>& w) {
  return w.empty() ? DensityWindow{} : DensityWindow(w.at(0), w.at(1));
}

LabelVolume mask_or_empty(const std::string& path, const Volume& volume) {
  if (path.empty()) return LabelVolume(volume.dims());
  LabelVolume mask = load_mask(path);
  check_same_grid(mask, volume);
  return mask;
}

Json volume_info(const Volume& v) {
  const Dims& d = v.dims();
  return {{"dims", Json::array({d.nx, d.ny, d.nz})},
          {"spacing_mm", to_json(v.spacing())},
          {"raw_range", Json::array({v.raw_range().min, v.raw_range().max})}};
}

std::string volume_text(const Volume& v) {
  char line[256];
  std::snprintf(line, sizeof line, "dims %dx%dx%d spacing %g,%g,%g mm raw range [%g, %g]", v.dims().nx,
                v.dims().ny, v.dims().nz, v.spacing().x, v.spacing().y, v.spacing().z, v.raw_range().min,
                v.raw_range().max);
  return line;
}

template <typename Opt>
Opt* triple(Opt* opt) {
  return opt->delimiter(',')->expected(3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume contouring toolkit: import, render, paint, interpolate, score, serve"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "Machine-readable JSON output");

  // import
  struct {
    std::string stack, raw, dtype = "u16", out;
    std::vector<int> dims;
    std::vector<double> spacing{1.0, 1.0, 1.0};
  } imp;
  auto* import_cmd = app.add_subcommand("import", "Build a normalized volume from a PGM stack or raw grid");
  auto* stack_opt = import_cmd->add_option("--stack", imp.stack, "Directory of P5 PGM slices");
  auto* raw_opt = import_cmd->add_option("--raw", imp.raw, "Raw little-endian grid");
  stack_opt->excludes(raw_opt);
  import_cmd->add_option("--dims", imp.dims, "nx,ny,nz for --raw")->delimiter(',')->expected(3);
  import_cmd->add_option("--dtype", imp.dtype, "u16 or f32 for --raw")->check(CLI::IsMember({"u16", "f32"}));
  triple(import_cmd->add_option("--spacing", imp.spacing, "sx,sy,sz in mm"));
  import_cmd->add_option("-o,--out", imp.out, "Output volume header (.json)")->required();

  // render
  struct {
    std::string volume, mask, tf, pose, out;
    std::vector<double> window, camera, tint{1.0, 0.0, 0.0, 0.5};
    int width = 256, height = 256, steps = kDefaultRaySteps;
    unsigned threads = 0;
    bool no_early = false;
  } ren;
  auto* render_cmd = app.add_subcommand("render", "Direct volume rendering to PNG");
  render_cmd->add_option("--volume", ren.volume)->required();
  render_cmd->add_option("--mask", ren.mask, "Label volume shown tinted");
  render_cmd->add_option("--tf", ren.tf, "Transfer function JSON (default grayscale ramp)");
  render_cmd->add_option("--pose", ren.pose, "Pose JSON");
  render_cmd->add_option("--window", ren.window, "lo,hi")->delimiter(',')->expected(2);
  render_cmd->add_option("--camera", ren.camera, "eye(3),target(3),up(3),width,height,worldWidth")
      ->delimiter(',')
      ->expected(12);
  render_cmd->add_option("--tint", ren.tint, "r,g,b,strength")->delimiter(',')->expected(4);
  render_cmd->add_option("--width", ren.width)->check(CLI::Range(1, 8192));
  render_cmd->add_option("--height", ren.height)->check(CLI::Range(1, 8192));
  render_cmd->add_option("--steps", ren.steps)->check(CLI::Range(1, 65536));
  render_cmd->add_option("--threads", ren.threads, "0 = all cores");
  render_cmd->add_flag("--no-early-termination", ren.no_early);
  render_cmd->add_option("-o,--out", ren.out)->required();

  // slice
  struct {
    std::string volume, mask, axis = "z", out;
    int index = 0;
    std::vector<double> window;
  } sl;
  auto* slice_cmd = app.add_subcommand("slice", "Write one cutting plane as PNG");
  slice_cmd->add_option("--volume", sl.volume)->required();
  slice_cmd->add_option("--mask", sl.mask);
  slice_cmd->add_option("--axis", sl.axis);
  slice_cmd->add_option("--index", sl.index)->required();
  slice_cmd->add_option("--window", sl.window, "lo,hi")->delimiter(',')->expected(2);
  slice_cmd->add_option("-o,--out", sl.out)->required();

  // paint
  struct {
    std::string volume, mask, script, session, out;
  } pt;
  auto* paint_cmd = app.add_subcommand("paint", "Apply a stroke script or replay a session log");
  paint_cmd->add_option("--volume", pt.volume)->required();
  auto* start_opt = paint_cmd->add_option("--mask", pt.mask, "Starting mask for --script (default empty)");
  auto* script_opt = paint_cmd->add_option("--script", pt.script, "Stroke script JSON");
  auto* session_opt = paint_cmd->add_option("--session", pt.session, "Session JSONL to replay");
  script_opt->excludes(session_opt);
  session_opt->excludes(start_opt);
  paint_cmd->add_option("-o,--out", pt.out)->required();

  // interp
  struct {
    std::string mask, volume, axis = "z", out;
    std::vector<int> keys;
  } ip;
  auto* interp_cmd = app.add_subcommand("interp", "Fill slices between key slices");
  interp_cmd->add_option("--mask", ip.mask)->required();
  interp_cmd->add_option("--volume", ip.volume, "Volume supplying voxel spacing");
  interp_cmd->add_option("--axis", ip.axis);
  interp_cmd->add_option("--keys", ip.keys)->delimiter(',')->required();
  interp_cmd->add_option("-o,--out", ip.out, "Output mask (default: in place)");

  // score
  std::string score_a, score_b;
  auto* score_cmd = app.add_subcommand("score", "Dice similarity of two masks");
  score_cmd->add_option("mask", score_a)->required();
  score_cmd->add_option("reference", score_b)->required();

  // gaze
  struct {
    std::string session, csv, summary;
    double threshold = kSaccadeThresholdDegPerSec;
  } gz;
  auto* gaze_cmd = app.add_subcommand("gaze", "Attention series and temporal metrics of a session");
  gaze_cmd->add_option("--session", gz.session)->required();
  gaze_cmd->add_option("--csv", gz.csv, "Attention series CSV (default stdout)");
  gaze_cmd->add_option("--summary", gz.summary, "Metrics summary JSON file");
  gaze_cmd->add_option("--threshold", gz.threshold, "Saccade threshold in deg/s")->check(CLI::PositiveNumber);

  // serve
  struct {
    std::string config, data_dir;
    std::optional<int> port;
  } sv;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP contouring service");
  serve_cmd->add_option("--config", sv.config, "{port, dataDir} JSON");
  serve_cmd->add_option("--port", sv.port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--data-dir", sv.data_dir);

  // phantom
  struct {
    std::string kind = "ellipsoid", out;
    std::vector<int> dims{64, 64, 48};
    std::vector<double> spacing{1.0, 1.0, 2.0}, radii{22.0, 16.0, 30.0};
    int key_step = 4;
  } ph;
  auto* phantom_cmd = app.add_subcommand("phantom", "Write a synthetic phantom, reference mask and scripts");
  phantom_cmd->add_option("--kind", ph.kind)->check(CLI::IsMember({"cube", "ellipsoid", "sphere"}));
  phantom_cmd->add_option("--dims", ph.dims, "nx,ny,nz (cube uses nx)")->delimiter(',')->expected(3);
  triple(phantom_cmd->add_option("--spacing", ph.spacing));
  phantom_cmd->add_option("--radii", ph.radii, "Semi-axes in mm (sphere uses the first)")
      ->delimiter(',')
      ->expected(3);
  phantom_cmd->add_option("--key-step", ph.key_step)->check(CLI::Range(1, 1000));
  phantom_cmd->add_option("-o,--out", ph.out, "Output directory")->required();

  // new-project
  struct {
    std::string id, volume, reference, data_dir = "data";
  } np;
  auto* project_cmd = app.add_subcommand("new-project", "Create a project directory for the service");
  project_cmd->add_option("--id", np.id)->required();
  project_cmd->add_option("--volume", np.volume)->required();
  project_cmd->add_option("--reference", np.reference, "Reference mask");
  project_cmd->add_option("--data-dir", np.data_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*import_cmd) {
      if (imp.stack.empty() == imp.raw.empty()) {
        std::cerr << "import: give exactly one of --stack or --raw\n";
        return kExitUsage;
      }
      const Vec3 spacing = vec3_of(imp.spacing);
      Volume volume = [&] {
        if (!imp.stack.empty()) return import_pgm_stack(imp.stack, spacing);
        if (imp.dims.size() != 3) throw Error(ErrorCode::InvalidArgument, "--raw needs --dims", "dims");
        return import_raw(imp.raw, Dims{imp.dims[0], imp.dims[1], imp.dims[2]}, imp.dtype, spacing);
      }();
      save_volume(imp.out, volume);
      emit(volume_info(volume), volume_text(volume));
    } else if (*render_cmd) {
      const Volume volume = load_volume(ren.volume);
      std::optional<LabelVolume> mask;
      if (!ren.mask.empty()) mask = mask_or_empty(ren.mask, volume);
      const TransferFunction tf =
          ren.tf.empty() ? TransferFunction::grayscale_ramp() : transfer_function_from_json(read_json(ren.tf));
      RenderOptions options;
      options.steps = ren.steps;
      options.threads = ren.threads;
      options.early_termination = !ren.no_early;
      if (!ren.pose.empty()) options.pose = pose_from_json(read_json(ren.pose));

      const Vec3 center = volume_center(volume);
      const Vec3 extent = volume.extent_mm();
      Camera camera = Camera::look_at(center + Vec3{0.0, 0.0, extent.z + 10.0}, center, {0.0, 1.0, 0.0},
                                      ren.width, ren.height, 1.2 * std::max({extent.x, extent.y, extent.z, 1.0}));
      if (!ren.camera.empty()) {
        const auto& c = ren.camera;
        camera = Camera::look_at({c[0], c[1], c[2]}, {c[3], c[4], c[5]}, {c[6], c[7], c[8]},
                                 static_cast<int>(c[9]), static_cast<int>(c[10]), c[11]);
      }
      const Rgba tint{ren.tint[0], ren.tint[1], ren.tint[2], ren.tint[3]};
      const Image image =
          render_image(volume, mask ? &*mask : nullptr, tf, window_of(ren.window), camera, tint, options);
      write_png(ren.out, image);
      emit({{"out", ren.out}, {"width", image.width}, {"height", image.height}}, "");
    } else if (*slice_cmd) {
      const Volume volume = load_volume(sl.volume);
      std::optional<LabelVolume> mask;
      if (!sl.mask.empty()) mask = mask_or_empty(sl.mask, volume);
      const Image image = render_slice(volume, mask ? &*mask : nullptr, parse_axis(sl.axis), sl.index,
                                       window_of(sl.window), {1.0, 0.0, 0.0, 0.5});
      write_png(sl.out, image);
      emit({{"out", sl.out}, {"width", image.width}, {"height", image.height}}, "");
    } else if (*paint_cmd) {
      if (pt.script.empty() == pt.session.empty()) {
        std::cerr << "paint: give exactly one of --script or --session\n";
        return kExitUsage;
      }
      const Volume volume = load_volume(pt.volume);
      LabelVolume mask = mask_or_empty(pt.mask, volume);
      std::size_t applied = 0;
      if (!pt.script.empty()) {
        for (const BrushStroke& s : stroke_script_from_json(read_json(pt.script))) {
          apply_stroke(mask, volume, s);
          ++applied;
        }
      } else {
        const SessionRecord session = parse_session(read_text(pt.session));
        mask = replay_session(volume, session);
        applied = session.events.size();
      }
      save_mask(pt.out, mask);
      char hash[32];
      std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(mask_hash(mask)));
      emit({{"out", pt.out}, {"applied", applied}, {"voxels", mask.count()}, {"mask_hash", hash}},
           std::to_string(mask.count()) + " voxels set, hash " + hash);
    } else if (*interp_cmd) {
      LabelVolume mask = load_mask(ip.mask);
      Vec3 spacing{1.0, 1.0, 1.0};
      if (!ip.volume.empty()) {
        const Volume volume = load_volume(ip.volume);
        check_same_grid(mask, volume);
        spacing = volume.spacing();
      }
      interpolate_slices(mask, parse_axis(ip.axis), ip.keys, spacing);
      const std::string out = ip.out.empty() ? ip.mask : ip.out;
      save_mask(out, mask);
      emit({{"out", out}, {"voxels", mask.count()}}, std::to_string(mask.count()) + " voxels set");
    } else if (*score_cmd) {
      const double value = dsc(load_mask(score_a), load_mask(score_b));
      char text[32];
      std::snprintf(text, sizeof text, "%.4f", value);
      emit({{"dsc", value}}, text);
    } else if (*gaze_cmd) {
      const SessionRecord session = parse_session(read_text(gz.session));
      const std::string csv = attention_csv(analyze_gaze(session, gz.threshold));
      const Json summary = metrics_summary(session, gz.threshold);
      if (!gz.summary.empty()) write_text(gz.summary, summary.dump(2) + "\n");
      if (!gz.csv.empty()) {
        write_text(gz.csv, csv);
        emit(summary, summary.dump(2));
      } else if (g_json) {
        emit(summary, "");
      } else {
        std::cout << csv;
      }
    } else if (*serve_cmd) {
      ServiceConfig config = load_service_config(sv.config.empty() ? std::nullopt : std::optional<fs::path>(sv.config));
      if (sv.port) config.port = *sv.port;
      if (!sv.data_dir.empty()) config.data_dir = sv.data_dir;
      Service service(config);
      const int port = service.bind();
      std::cerr << "serving " << config.data_dir.string() << " on " << config.host << ":" << port << '\n';
      service.run();
    } else if (*phantom_cmd) {
      const Vec3 spacing = vec3_of(ph.spacing);
      const Dims dims{ph.dims[0], ph.dims[1], ph.dims[2]};
      const Phantom phantom = ph.kind == "cube"     ? cube_phantom(dims.nx, spacing)
                              : ph.kind == "sphere" ? sphere_phantom(dims, spacing, ph.radii[0])
                                                    : ellipsoid_phantom(dims, spacing, vec3_of(ph.radii));
      const fs::path dir(ph.out);
      fs::create_directories(dir);
      save_volume(dir / "volume.json", phantom.volume);
      save_mask(dir / "reference.mask.json", phantom.reference);
      write_text(dir / "c2.session.jsonl", to_jsonl(c2_session(phantom, Axis::Transverse, ph.key_step)));
      write_text(dir / "c4.session.jsonl", to_jsonl(c4_session(phantom, Axis::Transverse, ph.key_step)));
      if (ph.kind == "sphere") {
        write_text(dir / "sphere.strokes.json",
                   stroke_script_to_json(sphere_script(phantom.volume, ph.radii[0])).dump(2) + "\n");
      }
      emit(volume_info(phantom.volume), volume_text(phantom.volume));
    } else if (*project_cmd) {
      if (np.id.empty() || !std::all_of(np.id.begin(), np.id.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
          })) {
        std::cerr << "new-project: --id may only hold letters, digits, '_' and '-'\n";
        return kExitUsage;
      }
      Project project = make_project(np.id, load_volume(np.volume));
      if (!np.reference.empty()) project.masks.emplace("reference", mask_or_empty(np.reference, project.volume));
      const fs::path dir = fs::path(np.data_dir) / np.id;
      save_project(dir, project);
      emit({{"id", np.id}, {"dir", dir.string()}}, dir.string());
    }
  } catch (const Error& e) {
    if (g_json) {
      std::cout << Json{{"error", std::string(to_string(e.code()))}, {"field", e.field()}, {"message", e.what()}}.dump()
                << '\n';
    }
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
