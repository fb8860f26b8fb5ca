#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "tsview/bench.hpp"
#include "tsview/error.hpp"
#include "tsview/protocol.hpp"
#include "unit/http_fixture.hpp"

using namespace tsview;

namespace {

std::shared_ptr<store::TraceRegistry> two_traces() {
  auto reg = std::make_shared<store::TraceRegistry>();
  reg->register_trace(bench::generate_signal(5000, 1, bench::SignalKind::NoisySine, "eeg"));
  reg->register_trace(bench::generate_signal(5000, 2, bench::SignalKind::CategoricalSteps, "stage"));
  return reg;
}

}  // namespace

TEST_CASE("GET /api/traces lists registered traces") {
  HttpFixture fx(two_traces());
  auto res = fx.client().Get("/api/traces");
  REQUIRE(res);
  CHECK(res->status == 200);
  const auto listing = protocol::parse_trace_listing(res->body);
  REQUIRE(listing.traces.size() == 2);
  CHECK(listing.traces[0].id == "eeg");
  CHECK(listing.traces[1].kind == "categorical");
  CHECK(listing.traces[0].n == 5000);
  CHECK(listing.traces[0].t0 == bench::kSignalEpochNs);
}

TEST_CASE("POST /api/view") {
  HttpFixture fx(two_traces());
  const protocol::ViewRequest req{{{"eeg", std::nullopt, std::nullopt, 200},
                                   {"ghost", std::nullopt, std::nullopt, 200}}};
  auto res = fx.client().Post("/api/view", protocol::serialize(req), "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  const auto resp = protocol::parse_view_response(res->body);
  REQUIRE(resp.traces.size() == 1);
  CHECK(resp.traces[0].aggregated);
  CHECK(resp.traces[0].xs.size() <= 200);
  CHECK(resp.traces[0].display_name.rfind("[R] eeg ~", 0) == 0);
  REQUIRE(resp.errors.size() == 1);
  CHECK(resp.errors[0].code == protocol::ErrorCode::NotFound);
}

TEST_CASE("POST /api/view uses the server default budget") {
  service::ServerConfig cfg;
  cfg.service.default_n_out = 50;
  HttpFixture fx(two_traces(), cfg);
  auto res = fx.client().Post("/api/view", R"({"updates":[{"id":"stage","start":null,"end":null}]})",
                              "application/json");
  REQUIRE(res);
  const auto resp = protocol::parse_view_response(res->body);
  REQUIRE(resp.traces.size() == 1);
  CHECK(resp.traces[0].xs.size() <= 50);
  CHECK(resp.traces[0].labels.has_value());
}

TEST_CASE("malformed view request is a 400") {
  HttpFixture fx(two_traces());
  auto res = fx.client().Post("/api/view", "{not json", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
}

TEST_CASE("GET / serves a page, or the configured assets") {
  {
    HttpFixture fx(two_traces());
    auto res = fx.client().Get("/");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body.find("/api/view") != std::string::npos);
  }
  const auto dir = std::filesystem::temp_directory_path() / "tsview_static_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "index.html") << "<html>explorer</html>";
  service::ServerConfig cfg;
  cfg.static_dir = dir;
  HttpFixture fx(two_traces(), cfg);
  auto res = fx.client().Get("/");
  REQUIRE(res);
  CHECK(res->body == "<html>explorer</html>");
  std::filesystem::remove_all(dir);
}

TEST_CASE("binding a taken port fails") {
  HttpFixture fx(two_traces());
  service::ServerConfig cfg;
  cfg.port = fx.port;
  service::HttpServer other(fx.registry, cfg);
  CHECK_THROWS_AS(other.bind(), Error);
}
