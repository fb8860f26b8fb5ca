#include "tsview/http_server.hpp"

#include "httplib.h"
#include "json.hpp"
#include "tsview/error.hpp"
#include "tsview/protocol.hpp"

namespace tsview::service {
namespace {

constexpr const char* kJson = "application/json";

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>tsview</title></head>
<body>
<h1>tsview</h1>
<p>The explorer UI is not installed. Start the server with
<code>--static-dir</code> pointing at the UI build, or use the API:</p>
<ul>
<li><code>GET /api/traces</code></li>
<li><code>POST /api/view</code></li>
</ul>
</body></html>
)";

std::string error_body(const std::string& message) {
  return nlohmann::json{{"error", message}}.dump();
}

}  // namespace

HttpServer::HttpServer(std::shared_ptr<const store::TraceRegistry> registry, ServerConfig config)
    : registry_(std::move(registry)),
      config_(std::move(config)),
      server_(std::make_unique<httplib::Server>()) {
  if (config_.service.default_n_out < 2) throw ValidationError("default n_out must be >= 2");

  server_->Get("/api/traces", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(protocol::serialize(list_traces(*registry_)), kJson);
  });

  server_->Post("/api/view", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      const auto view = protocol::parse_view_request(req.body);
      res.set_content(protocol::serialize(handle_view_request(*registry_, view, config_.service)),
                      kJson);
    } catch (const ParseError& e) {
      res.status = 400;
      res.set_content(error_body(e.what()), kJson);
    }
  });

  bool mounted = false;
  if (config_.static_dir) mounted = server_->set_mount_point("/", config_.static_dir->string());
  if (!mounted) {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
    });
  }

  // httplib's default also sets SO_REUSEPORT, which lets a second server
  // silently share a taken port.
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });

  server_->set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(error_body(what), kJson);
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (config_.port == 0) {
    const int port = server_->bind_to_any_port(config_.host);
    if (port < 0) throw Error("cannot bind " + config_.host);
    config_.port = port;
    return port;
  }
  if (!server_->bind_to_port(config_.host, config_.port)) {
    throw Error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  return config_.port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

bool HttpServer::running() const { return server_->is_running(); }

}  // namespace tsview::service
