// SPDX-License-Identifier: Apache-2.0
#include "vrcontour/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <thread>

#include "vrcontour/brush.hpp"
#include "vrcontour/contours.hpp"
#include "vrcontour/error.hpp"
#include "vrcontour/interp.hpp"
#include "vrcontour/io.hpp"
#include "vrcontour/metrics.hpp"
#include "vrcontour/project.hpp"
#include "vrcontour/render.hpp"
#include "vrcontour/report.hpp"
#include "vrcontour/serialization.hpp"

namespace fs = std::filesystem;

namespace vrc {

ServiceConfig load_service_config(const std::optional<fs::path>& file) {
  ServiceConfig config;
  if (file) {
    const Json j = read_json(*file);
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "service config must be an object", "config");
    if (j.contains("port")) {
      if (!j.at("port").is_number_integer()) {
        throw Error(ErrorCode::InvalidArgument, "'port' must be an integer", "port");
      }
      config.port = j.at("port").get<int>();
    }
    if (j.contains("dataDir")) {
      if (!j.at("dataDir").is_string()) {
        throw Error(ErrorCode::InvalidArgument, "'dataDir' must be a string", "dataDir");
      }
      config.data_dir = j.at("dataDir").get<std::string>();
    }
  }
  if (const char* port = std::getenv("PORT"); port != nullptr && *port != '\0') {
    char* end = nullptr;
    const long value = std::strtol(port, &end, 10);
    if (*end != '\0') throw Error(ErrorCode::InvalidArgument, "PORT must be an integer", "PORT");
    config.port = static_cast<int>(value);
  }
  if (const char* dir = std::getenv("DATA_DIR"); dir != nullptr && *dir != '\0') config.data_dir = dir;
  if (config.port < 0 || config.port > 65535) {
    throw Error(ErrorCode::InvalidArgument, "port must be in [0, 65535]", "port");
  }
  return config;
}

namespace {

constexpr const char* kIdPattern = "([A-Za-z0-9_-]+)";
constexpr Rgba kLabelTint{1.0, 0.0, 0.0, 0.5};

struct Entry {
  Entry(fs::path d, Project p) : dir(std::move(d)), project(std::move(p)) {}
  std::shared_mutex mutex;
  fs::path dir;
  Project project;
};

std::uint64_t mask_version(const SessionRecord& session) {
  return static_cast<std::uint64_t>(std::count_if(session.events.begin(), session.events.end(), [](const SessionEvent& e) {
    return (e.kind == EventKind::StrokeEnd && e.stroke) || (e.kind == EventKind::Interp && e.interp);
  }));
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::VersionConflict: return 409;
    case ErrorCode::IoError: return 500;
    default: return 400;
  }
}

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res,
            {{"error", std::string(to_string(e.code()))}, {"field", e.field()}, {"message", e.what()}},
            status_for(e.code()));
}

template <typename F>
httplib::Server::Handler guarded(F&& body) {
  return [body = std::forward<F>(body)](const httplib::Request& req, httplib::Response& res) {
    try {
      body(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const Json::exception& e) {
      send_error(res, Error(ErrorCode::InvalidArgument, e.what(), "body"));
    } catch (const std::exception& e) {
      send_json(res, {{"error", "Internal"}, {"field", ""}, {"message", e.what()}}, 500);
    }
  };
}

std::string param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) {
    throw Error(ErrorCode::InvalidArgument, std::string("missing query parameter '") + name + "'", name);
  }
  return req.get_param_value(name);
}

std::vector<double> numbers(const std::string& text, const char* field) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, std::string("'") + field + "' must be comma-separated numbers", field);
    }
    out.push_back(v);
  }
  return out;
}

int integer_param(const httplib::Request& req, const char* name) {
  const std::vector<double> v = numbers(param(req, name), name);
  if (v.size() != 1 || v[0] != std::floor(v[0]) || std::abs(v[0]) > 1e9) {
    throw Error(ErrorCode::InvalidArgument, std::string("'") + name + "' must be an integer", name);
  }
  return static_cast<int>(v[0]);
}

DensityWindow window_param(const httplib::Request& req, const DensityWindow& fallback) {
  if (!req.has_param("window")) return fallback;
  const std::vector<double> v = numbers(req.get_param_value("window"), "window");
  if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "'window' must be lo,hi", "window");
  try {
    return DensityWindow(v[0], v[1]);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), "window");
  }
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("request body is not JSON: ") + e.what(), "body");
  }
}

void check_base_version(const Json& body, std::uint64_t current) {
  if (!body.is_object() || !body.contains("baseVersion")) return;
  const Json& base = body.at("baseVersion");
  if (!base.is_number_unsigned() && !base.is_number_integer()) {
    throw Error(ErrorCode::InvalidArgument, "'baseVersion' must be an integer", "baseVersion");
  }
  if (base.get<long long>() != static_cast<long long>(current)) {
    throw Error(ErrorCode::VersionConflict,
                "mask is at version " + std::to_string(current) + ", request was based on " + base.dump(),
                "baseVersion");
  }
}

Json project_summary(const Project& p) {
  Json masks = Json::array();
  for (const auto& [name, mask] : p.masks) masks.push_back(name);
  const Dims& d = p.volume.dims();
  return {{"id", p.id},
          {"dims", Json::array({d.nx, d.ny, d.nz})},
          {"spacing_mm", to_json(p.volume.spacing())},
          {"raw_range", Json::array({p.volume.raw_range().min, p.volume.raw_range().max})},
          {"masks", masks},
          {"maskVersion", mask_version(p.session)},
          {"transfer_function", to_json(p.transfer_function)},
          {"window", to_json(p.window)},
          {"pose", to_json(p.pose)}};
}

LabelVolume& user_mask(Project& p) {
  auto it = p.masks.find("user");
  if (it == p.masks.end()) it = p.masks.emplace("user", LabelVolume(p.volume.dims())).first;
  return it->second;
}

double last_time(const SessionRecord& s) {
  if (!s.events.empty()) return s.events.back().t_ms;
  return s.anchor_ms.value_or(0.0);
}

}  // namespace

struct Service::Impl {
  ServiceConfig config;
  httplib::Server server;
  std::mutex entries_mutex;
  std::map<std::string, std::shared_ptr<Entry>> entries;
  int bound_port = -1;
  std::thread worker;

  std::shared_ptr<Entry> entry(const std::string& id) {
    std::lock_guard lock(entries_mutex);
    if (auto it = entries.find(id); it != entries.end()) return it->second;
    const fs::path dir = config.data_dir / id;
    if (!fs::exists(dir / "project.json")) {
      throw Error(ErrorCode::NotFound, "no project '" + id + "'", "id");
    }
    auto e = std::make_shared<Entry>(dir, load_project(dir));
    entries.emplace(id, e);
    return e;
  }

  // Runs a mutation on a copy and commits it (memory and disk) only if every
  // step succeeds.
  template <typename F>
  Json mutate(const std::string& id, F&& change) {
    auto e = entry(id);
    std::unique_lock lock(e->mutex);
    Project next = e->project;
    change(next);
    save_project(e->dir, next, false);
    e->project = std::move(next);
    return {{"maskVersion", mask_version(e->project.session)}};
  }

  template <typename F>
  void read(const std::string& id, F&& use) {
    auto e = entry(id);
    std::shared_lock lock(e->mutex);
    use(static_cast<const Project&>(e->project));
  }

  void routes();
};

void Service::Impl::routes() {
  const std::string base = std::string("/projects/") + kIdPattern;

  server.Get(base, guarded([this](const httplib::Request& req, httplib::Response& res) {
    read(req.matches[1], [&](const Project& p) { send_json(res, project_summary(p)); });
  }));

  server.Get(base + "/slice", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const Axis axis = parse_axis(param(req, "axis"));
    const int index = integer_param(req, "index");
    read(req.matches[1], [&](const Project& p) {
      const auto user = p.masks.find("user");
      const LabelVolume* labels = user != p.masks.end() ? &user->second : nullptr;
      const Image image = render_slice(p.volume, labels, axis, index, window_param(req, p.window), kLabelTint);
      const auto png = encode_png(image);
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    });
  }));

  server.Get(base + "/render", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::vector<double> c = numbers(param(req, "cam"), "cam");
    if (c.size() != 12) {
      throw Error(ErrorCode::InvalidArgument,
                  "'cam' must be eye(3),target(3),up(3),width,height,worldWidth", "cam");
    }
    const auto size_of = [](double v) {
      if (v != std::floor(v) || v < 1 || v > 2048) {
        throw Error(ErrorCode::InvalidArgument, "image size must be an integer in [1, 2048]", "cam");
      }
      return static_cast<int>(v);
    };
    const Camera camera = Camera::look_at({c[0], c[1], c[2]}, {c[3], c[4], c[5]}, {c[6], c[7], c[8]},
                                          size_of(c[9]), size_of(c[10]), c[11]);
    RenderOptions options;
    options.threads = config.render_threads;
    if (req.has_param("steps")) {
      options.steps = integer_param(req, "steps");
      if (options.steps < 1 || options.steps > 4096) {
        throw Error(ErrorCode::InvalidArgument, "'steps' must be in [1, 4096]", "steps");
      }
    }
    read(req.matches[1], [&](const Project& p) {
      options.pose = p.pose;
      const auto user = p.masks.find("user");
      const LabelVolume* labels = user != p.masks.end() ? &user->second : nullptr;
      const Image image =
          render_image(p.volume, labels, p.transfer_function, window_param(req, p.window), camera, kLabelTint, options);
      const auto png = encode_png(image);
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    });
  }));

  server.Post(base + "/stroke", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    BrushStroke stroke = stroke_from_json(body);
    validate(stroke);
    send_json(res, mutate(req.matches[1], [&](Project& p) {
                check_base_version(body, mask_version(p.session));
                apply_stroke(user_mask(p), p.volume, stroke);
                const double t = std::max(last_time(p.session), stroke.timestamp_ms);
                append_event(p.session, make_event(t, EventKind::StrokeStart));
                SessionEvent end = make_event(t, EventKind::StrokeEnd);
                end.stroke = stroke;
                append_event(p.session, end);
              }));
  }));

  server.Post(base + "/interp", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const Json body = parse_body(req);
    const Json& axis = require(body, "axis");
    const Json& keys = require(body, "keys");
    if (!axis.is_string()) throw Error(ErrorCode::InvalidArgument, "'axis' must be a string", "axis");
    if (!keys.is_array()) throw Error(ErrorCode::InvalidArgument, "'keys' must be an array", "keys");
    InterpRequest request{parse_axis(axis.get<std::string>()), {}};
    for (const Json& k : keys) {
      if (!k.is_number_integer()) throw Error(ErrorCode::InvalidArgument, "'keys' must hold integers", "keys");
      request.keys.push_back(k.get<int>());
    }
    send_json(res, mutate(req.matches[1], [&](Project& p) {
                check_base_version(body, mask_version(p.session));
                interpolate_slices(user_mask(p), request.axis, request.keys, p.volume.spacing());
                SessionEvent e = make_event(last_time(p.session), EventKind::Interp);
                e.interp = request;
                append_event(p.session, e);
              }));
  }));

  server.Get(base + "/dsc", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const std::string against = req.has_param("against") ? req.get_param_value("against") : "reference";
    const std::string mask = req.has_param("mask") ? req.get_param_value("mask") : "user";
    read(req.matches[1], [&](const Project& p) {
      const auto a = p.masks.find(mask);
      const auto b = p.masks.find(against);
      if (a == p.masks.end()) throw Error(ErrorCode::NotFound, "no mask '" + mask + "'", "mask");
      if (b == p.masks.end()) throw Error(ErrorCode::NotFound, "no mask '" + against + "'", "against");
      send_json(res, {{"dsc", dsc(a->second, b->second)}, {"mask", mask}, {"against", against}});
    });
  }));

  server.Get(base + "/metrics", guarded([this](const httplib::Request& req, httplib::Response& res) {
    read(req.matches[1], [&](const Project& p) {
      Json out = {{"maskVersion", mask_version(p.session)}, {"events", p.session.events.size()}};
      const auto user = p.masks.find("user");
      const auto reference = p.masks.find("reference");
      out["dsc"] = user != p.masks.end() && reference != p.masks.end() ? Json(dsc(user->second, reference->second))
                                                                        : Json(nullptr);
      try {
        out["session"] = metrics_summary(p.session);
        out["attention"] = Json::parse("[]");
        for (const AttentionPoint& a : analyze_gaze(p.session)) {
          out["attention"].push_back({{"progress", a.progress},
                                      {"tablet_pct", a.tablet_pct},
                                      {"volume_pct", a.volume_pct},
                                      {"frames", a.frames},
                                      {"empty", a.empty}});
        }
      } catch (const Error& e) {
        out["session"] = nullptr;
        out["attention"] = nullptr;
        out["incomplete"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
      }
      send_json(res, out);
    });
  }));

  server.Post(base + "/pose", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const Pose pose = pose_from_json(parse_body(req));
    validate(pose);
    Json reply = mutate(req.matches[1], [&](Project& p) { p.pose = pose; });
    reply["pose"] = to_json(pose);
    send_json(res, reply);
  }));

  server.Get(base + "/contours", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const Axis axis = parse_axis(param(req, "axis"));
    read(req.matches[1], [&](const Project& p) {
      const auto user = p.masks.find("user");
      if (user == p.masks.end()) throw Error(ErrorCode::NotFound, "project has no user mask", "mask");
      send_json(res, to_json(contour_set(user->second, axis, p.volume.spacing())));
    });
  }));

  server.Post(base + "/session/events", guarded([this](const httplib::Request& req, httplib::Response& res) {
    std::vector<std::pair<std::size_t, SessionEvent>> events;
    std::istringstream in(req.body);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      events.emplace_back(line_number, parse_event(line, line_number));
    }
    Json reply = mutate(req.matches[1], [&](Project& p) {
      LabelVolume& mask = user_mask(p);
      for (const auto& [number, event] : events) {
        append_event(p.session, event, number);
        try {
          apply_event(mask, p.volume, event);
        } catch (const Error& e) {
          throw Error(ErrorCode::MalformedEvent, e.what(), std::to_string(number));
        }
      }
    });
    reply["appended"] = events.size();
    send_json(res, reply);
  }));

  server.Get(base + "/session", guarded([this](const httplib::Request& req, httplib::Response& res) {
    read(req.matches[1], [&](const Project& p) { res.set_content(to_jsonl(p.session), "application/x-ndjson"); });
  }));
}

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  impl_->routes();
}

Service::~Service() { stop(); }

int Service::bind() {
  if (impl_->bound_port >= 0) return impl_->bound_port;
  if (impl_->config.port == 0) {
    impl_->bound_port = impl_->server.bind_to_any_port(impl_->config.host);
  } else if (impl_->server.bind_to_port(impl_->config.host, impl_->config.port)) {
    impl_->bound_port = impl_->config.port;
  }
  if (impl_->bound_port < 0) {
    throw Error(ErrorCode::IoError,
                "cannot bind " + impl_->config.host + ":" + std::to_string(impl_->config.port), "port");
  }
  return impl_->bound_port;
}

void Service::run() {
  bind();
  impl_->server.listen_after_bind();
}

void Service::start() {
  bind();
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void Service::stop() {
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

int Service::port() const noexcept { return impl_->bound_port; }

}  // namespace vrc
