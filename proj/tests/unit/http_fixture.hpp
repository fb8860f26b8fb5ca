#pragma once

// In-process server on an ephemeral port plus a client pointed at it.

#include <memory>
#include <thread>

#include "httplib.h"
#include "tsview/http_server.hpp"

struct HttpFixture {
  std::shared_ptr<tsview::store::TraceRegistry> registry;
  std::unique_ptr<tsview::service::HttpServer> server;
  std::thread thread;
  int port = 0;

  explicit HttpFixture(std::shared_ptr<tsview::store::TraceRegistry> reg,
                       tsview::service::ServerConfig cfg = {})
      : registry(std::move(reg)) {
    cfg.port = 0;
    server = std::make_unique<tsview::service::HttpServer>(registry, cfg);
    port = server->bind();
    thread = std::thread([this] { server->listen(); });
    while (!server->running()) std::this_thread::yield();
  }

  ~HttpFixture() {
    server->stop();
    thread.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(120, 0);
    return c;
  }
};
