// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace vrc {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  /// 0 binds an ephemeral port; see Service::port().
  int port = 8080;
  std::filesystem::path data_dir = "data";
  /// Render worker threads per request, 0 = hardware concurrency.
  unsigned render_threads = 0;
};

/// Reads {"port", "dataDir"} from `file` when given, then lets the PORT and
/// DATA_DIR environment variables override. Throws InvalidArgument.
ServiceConfig load_service_config(const std::optional<std::filesystem::path>& file);

/// HTTP contouring service over projects stored as `data_dir/<id>/`.
/// Reads run concurrently; strokes, interpolation, pose and session appends
/// are serialized per project and written through to disk before replying.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the socket and returns the bound port.
  int bind();
  /// Serves until stop(); binds first if needed.
  void run();
  /// run() on a background thread; returns once the server accepts requests.
  void start();
  void stop();
  int port() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vrc
