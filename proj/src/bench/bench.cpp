#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "tsview/aggregation.hpp"
#include "tsview/bench.hpp"
#include "tsview/error.hpp"
#include "tsview/protocol.hpp"
#include "tsview/view_service.hpp"

namespace tsview::bench {
namespace {

constexpr std::string_view kBaseline = "none";

bool known_algorithm(std::string_view name) {
  return name == kBaseline || aggregation::parse_algorithm(name).has_value();
}

// Rough resident footprint of one repetition of the default pipeline.
double estimated_cell_bytes(std::string_view algorithm, std::size_t n_samples,
                            std::size_t n_traces) {
  const double points = static_cast<double>(n_samples) * static_cast<double>(n_traces);
  double bytes = points * 16.0 + static_cast<double>(n_samples) * 8.0;
  // full-resolution response: update vectors, index list and JSON text
  if (algorithm == kBaseline) bytes += points * (16.0 + 8.0 + 45.0);
  return bytes;
}

template <typename T>
std::vector<T> json_list(const nlohmann::json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<std::vector<T>>();
}

}  // namespace

void validate(const BenchConfig& cfg) {
  const auto positive = [](const auto& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](std::size_t x) { return x >= 1; });
  };
  if (!positive(cfg.sample_sizes)) throw ValidationError("bench: sample sizes must be >= 1");
  if (!positive(cfg.trace_counts)) throw ValidationError("bench: trace counts must be >= 1");
  if (cfg.n_out < 2) throw ValidationError("bench: n_out must be >= 2");
  if (cfg.repetitions < 1) throw ValidationError("bench: repetitions must be >= 1");
  if (!(cfg.cutoff_s > 0.0)) throw ValidationError("bench: cutoff must be positive");
  if (cfg.minmax_ratio < 1) throw ValidationError("bench: minmax_ratio must be >= 1");
  if (cfg.algorithms.empty()) throw ValidationError("bench: no algorithms configured");
  for (const auto& a : cfg.algorithms) {
    if (!known_algorithm(a)) throw ValidationError("bench: unknown algorithm '" + a + "'");
  }
}

BenchConfig parse_bench_config(std::string_view json_text) {
  const auto j = nlohmann::json::parse(json_text.begin(), json_text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("bench config: expected a JSON object");
  BenchConfig cfg;
  try {
    cfg.sample_sizes = json_list(j, "sample_sizes", cfg.sample_sizes);
    cfg.trace_counts = json_list(j, "trace_counts", cfg.trace_counts);
    cfg.algorithms = json_list(j, "algorithms", cfg.algorithms);
    cfg.n_out = j.value("n_out", cfg.n_out);
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
    cfg.cutoff_s = j.value("cutoff_s", cfg.cutoff_s);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.minmax_ratio = j.value("minmax_ratio", cfg.minmax_ratio);
    cfg.memory_guard = j.value("memory_guard", cfg.memory_guard);
    if (j.contains("signal")) {
      const auto kind = parse_signal_kind(j.at("signal").get<std::string>());
      if (!kind) throw ParseError("bench config: unknown signal kind");
      cfg.signal = *kind;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bench config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

double run_pipeline(const CellSpec& cell) {
  const BenchConfig& cfg = *cell.config;
  std::vector<store::Trace> traces;
  traces.reserve(cell.n_traces);
  for (std::size_t t = 0; t < cell.n_traces; ++t) {
    const std::uint64_t seed = cfg.seed + 1000 * cell.repetition + t;
    traces.push_back(generate_signal(cell.n_samples, seed, cfg.signal, "trace-" + std::to_string(t)));
  }

  service::ServiceConfig svc;
  std::size_t n_out = cfg.n_out;
  if (cell.algorithm == kBaseline) {
    n_out = std::max<std::size_t>(cell.n_samples, 2);  // identity path
  } else {
    svc.aggregator.algorithm = *aggregation::parse_algorithm(cell.algorithm);
    svc.aggregator.minmax_ratio = cfg.minmax_ratio;
  }

  const auto t0 = std::chrono::steady_clock::now();
  store::TraceRegistry registry;
  protocol::ViewRequest req;
  for (auto& trace : traces) {
    req.updates.push_back({registry.register_trace(std::move(trace)), std::nullopt, std::nullopt, n_out});
  }
  const auto body = protocol::serialize(service::handle_view_request(registry, req, svc));
  const auto t1 = std::chrono::steady_clock::now();
  if (body.empty()) throw Error("empty response");
  return std::chrono::duration<double>(t1 - t0).count();
}

BenchReport run_benchmark(const BenchConfig& cfg, const CellRunner& runner) {
  validate(cfg);
  auto sizes = cfg.sample_sizes;
  auto counts = cfg.trace_counts;
  std::sort(sizes.begin(), sizes.end());
  std::sort(counts.begin(), counts.end());

  BenchReport report;
  for (const auto& algorithm : cfg.algorithms) {
    for (const std::size_t n_samples : sizes) {
      for (const std::size_t n_traces : counts) {
        BenchRow row{algorithm, n_samples, n_traces, std::nullopt, std::nullopt, 0, false};

        if (cfg.memory_guard > 0.0) {
          const double budget = cfg.memory_guard * static_cast<double>(available_memory_bytes());
          if (budget > 0.0 && estimated_cell_bytes(algorithm, n_samples, n_traces) > budget) {
            row.truncated = true;
            report.rows.push_back(std::move(row));
            break;
          }
        }

        reset_peak_rss();
        const std::size_t base = current_rss_bytes();
        std::vector<double> durations;
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
          const double d = runner({algorithm, n_samples, n_traces, rep, &cfg});
          if (d > cfg.cutoff_s) {
            row.truncated = true;
            break;
          }
          durations.push_back(d);
        }
        const std::size_t peak = peak_rss_bytes();
        row.peak_mem_bytes = peak > base ? peak - base : 0;

        if (!row.truncated) {
          const auto n = static_cast<double>(durations.size());
          double mean = 0.0;
          for (double d : durations) mean += d;
          mean /= n;
          double var = 0.0;
          for (double d : durations) var += (d - mean) * (d - mean);
          row.mean_s = mean;
          row.std_s = durations.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
        }
        const bool stop_row = row.truncated;
        report.rows.push_back(std::move(row));
        if (stop_row) break;
      }
    }
  }
  return report;
}

void write_report_csv(const BenchReport& report, std::ostream& out) {
  out << "# measured: ingest + aggregate + serialize; browser rendering excluded\n";
  out << kReportColumns << '\n';
  char buf[64];
  for (const auto& r : report.rows) {
    out << r.algorithm << ',' << r.n_samples << ',' << r.n_traces << ',';
    if (r.mean_s) {
      std::snprintf(buf, sizeof buf, "%.9g", *r.mean_s);
      out << buf;
    }
    out << ',';
    if (r.std_s) {
      std::snprintf(buf, sizeof buf, "%.9g", *r.std_s);
      out << buf;
    }
    out << ',' << r.peak_mem_bytes << ',' << (r.truncated ? "true" : "false") << '\n';
  }
}

BenchReport parse_report_csv(std::string_view text) {
  BenchReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != kReportColumns) throw ParseError("bench report: unexpected header");
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 7) throw ParseError("bench report: expected 7 columns");
    try {
      BenchRow r;
      r.algorithm = cells[0];
      r.n_samples = std::stoull(cells[1]);
      r.n_traces = std::stoull(cells[2]);
      if (!cells[3].empty()) r.mean_s = std::stod(cells[3]);
      if (!cells[4].empty()) r.std_s = std::stod(cells[4]);
      r.peak_mem_bytes = std::stoull(cells[5]);
      r.truncated = cells[6] == "true";
      report.rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError("bench report: bad number in row");
    }
  }
  return report;
}

}  // namespace tsview::bench
