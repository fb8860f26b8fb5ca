#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "tsview/series_store.hpp"
#include "tsview/view_service.hpp"

namespace httplib {
class Server;
}

namespace tsview::service {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8050;
  ServiceConfig service{};
  double gap_factor = 4.0;
  std::optional<std::filesystem::path> static_dir;  // explorer-ui build, served at /
};

// HTTP front of the view service:
//   GET  /api/traces  trace listing
//   POST /api/view    ViewRequest -> ViewResponse
//   GET  /            explorer-ui assets (or a placeholder page)
class HttpServer {
 public:
  HttpServer(std::shared_ptr<const store::TraceRegistry> registry, ServerConfig config);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds config.port (0 picks a free port) and returns the bound port.
  /// Throws Error on failure.
  int bind();
  /// Blocks serving requests until stop() is called.
  void listen();
  void stop();
  bool running() const;

 private:
  std::shared_ptr<const store::TraceRegistry> registry_;
  ServerConfig config_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace tsview::service
