// tsview command line: serve | bench | demo-aliasing

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "tsview/aggregation.hpp"
#include "tsview/bench.hpp"
#include "tsview/csv_ingest.hpp"
#include "tsview/error.hpp"
#include "tsview/http_server.hpp"

namespace {

int run_serve(const tsview::service::ServerConfig& cfg, const std::string& data_path) {
  auto registry = std::make_shared<tsview::store::TraceRegistry>(cfg.gap_factor);
  if (!data_path.empty()) {
    const auto schema = tsview::ingest::infer_csv_schema(data_path);
    const auto ids = tsview::ingest::ingest_csv(*registry, data_path, schema);
    std::cerr << "ingested " << ids.size() << " trace(s) from " << data_path << "\n";
  }

  // Handle SIGINT/SIGTERM on a dedicated thread so shutdown runs outside a
  // signal handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  tsview::service::HttpServer server(registry, cfg);
  const int port = server.bind();
  std::cerr << "listening on http://" << cfg.host << ":" << port << "\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  std::cerr << "stopped\n";
  return 0;
}

int run_bench(const std::string& config_path, const std::string& out_path) {
  tsview::bench::BenchConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw tsview::Error("cannot read " + config_path);
    std::stringstream text;
    text << in.rdbuf();
    cfg = tsview::bench::parse_bench_config(text.str());
  }
  const auto report = tsview::bench::run_benchmark(cfg);
  std::ofstream out(out_path);
  if (!out) throw tsview::Error("cannot write " + out_path);
  tsview::bench::write_report_csv(report, out);
  tsview::bench::write_report_csv(report, std::cout);
  return 0;
}

int run_demo(const std::string& out_dir) {
  const auto s = tsview::bench::aliasing_demo(out_dir);
  std::printf("n_in=%zu n_out=%zu\n", s.n_in, s.n_out);
  for (const auto* series : {&s.every_nth, &s.minmax_lttb}) {
    std::printf("%-10s points=%zu retention=%.4f\n", series->algorithm.c_str(),
                series->xs.size(), series->retention);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsview: interactive large time series viewer"};
  app.require_subcommand(1);

  tsview::service::ServerConfig server_cfg;
  std::string data_path;
  std::string aggregator = "minmaxlttb";
  std::size_t ratio = 4;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Serve the view API over HTTP");
  serve->add_option("--port", server_cfg.port, "Listen port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", server_cfg.host, "Listen address");
  serve->add_option("--data", data_path, "CSV file to ingest")->check(CLI::ExistingFile);
  serve->add_option("--n-out", server_cfg.service.default_n_out, "Default point budget")
      ->default_val(1000)
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  serve->add_option("--aggregator", aggregator, "lttb|minmax|minmaxlttb|everynth")
      ->default_val("minmaxlttb")
      ->check(CLI::IsMember({"lttb", "minmax", "minmaxlttb", "everynth"}));
  serve->add_option("--ratio", ratio, "MinMax preselection ratio")
      ->default_val(4)
      ->check(CLI::PositiveNumber);
  serve->add_option("--gap-factor", server_cfg.gap_factor, "Gap threshold over median delta")
      ->default_val(4.0)
      ->check(CLI::PositiveNumber);
  serve->add_option("--static-dir", static_dir, "Explorer UI assets")->check(CLI::ExistingDirectory);

  std::string config_path;
  std::string report_path = "report.csv";
  auto* bench = app.add_subcommand("bench", "Run the scaling benchmark");
  bench->add_option("--config", config_path, "JSON benchmark config")->check(CLI::ExistingFile);
  bench->add_option("--out", report_path, "Report CSV path");

  std::string demo_dir = "aliasing";
  auto* demo = app.add_subcommand("demo-aliasing", "Write the EveryNth vs MinMaxLTTB comparison");
  demo->add_option("--out", demo_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      server_cfg.service.aggregator.algorithm = *tsview::aggregation::parse_algorithm(aggregator);
      server_cfg.service.aggregator.minmax_ratio = ratio;
      if (!static_dir.empty()) server_cfg.static_dir = static_dir;
      return run_serve(server_cfg, data_path);
    }
    if (*bench) return run_bench(config_path, report_path);
    if (*demo) return run_demo(demo_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
