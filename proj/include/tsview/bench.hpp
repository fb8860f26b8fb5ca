#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsview/series_store.hpp"

namespace tsview::bench {

enum class SignalKind { NoisySine, RandomWalk, CategoricalSteps, BooleanBursts };

std::string_view to_string(SignalKind kind) noexcept;
std::optional<SignalKind> parse_signal_kind(std::string_view name) noexcept;

inline constexpr store::Timestamp kSignalEpochNs = 1'600'000'000'000'000'000;
inline constexpr store::Timestamp kSignalPeriodNs = 1'000'000;  // 1 kHz
inline constexpr std::size_t kSinePeriod = 1000;

/// Deterministic synthetic trace for fixed (n, seed, kind). Timestamps start
/// at kSignalEpochNs with kSignalPeriodNs spacing. noisy-sine is
/// sin(2*pi*i/1000) plus Gaussian noise of sigma 0.1.
store::Trace generate_signal(std::size_t n, std::uint64_t seed, SignalKind kind,
                             std::string id = "signal");

// Process memory from /proc/self/status.
std::size_t current_rss_bytes();
std::size_t peak_rss_bytes();
/// Resets the kernel's high-water mark to the current RSS. Returns false
/// when the kernel does not allow it.
bool reset_peak_rss();
std::size_t available_memory_bytes();

struct BenchConfig {
  std::vector<std::size_t> sample_sizes{100'000, 1'000'000, 10'000'000};
  std::vector<std::size_t> trace_counts{1, 5, 10, 20};
  std::size_t n_out = 1000;
  // Aggregator names, plus "none" for the no-aggregation baseline.
  std::vector<std::string> algorithms{"minmaxlttb", "none"};
  std::size_t repetitions = 5;
  double cutoff_s = 120.0;
  std::uint64_t seed = 42;
  SignalKind signal = SignalKind::NoisySine;
  std::size_t minmax_ratio = 4;
  // Cells whose estimated footprint exceeds this fraction of available
  // memory are reported truncated without running. 0 disables the guard.
  double memory_guard = 0.8;
};

/// Throws ValidationError for out-of-range fields or unknown names.
void validate(const BenchConfig& cfg);
/// JSON object; absent keys keep their defaults.
BenchConfig parse_bench_config(std::string_view json_text);

struct CellSpec {
  std::string algorithm;
  std::size_t n_samples = 0;
  std::size_t n_traces = 0;
  std::size_t repetition = 0;
  const BenchConfig* config = nullptr;
};

// Runs one repetition of a cell and returns its measured duration in seconds.
using CellRunner = std::function<double(const CellSpec&)>;

/// Default runner: generates the traces, then times registration plus one
/// full-extent view request including JSON serialization.
double run_pipeline(const CellSpec& cell);

struct BenchRow {
  std::string algorithm;
  std::size_t n_samples = 0;
  std::size_t n_traces = 0;
  std::optional<double> mean_s;  // absent when truncated
  std::optional<double> std_s;
  std::size_t peak_mem_bytes = 0;
  bool truncated = false;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

/// Cells are visited per (algorithm, n_samples) row in ascending trace count.
/// A repetition longer than cutoff_s marks the cell truncated and skips the
/// larger cells of that row.
BenchReport run_benchmark(const BenchConfig& cfg, const CellRunner& runner = run_pipeline);

inline constexpr std::string_view kReportColumns =
    "algorithm,n_samples,n_traces,mean_s,std_s,peak_mem_bytes,truncated";

void write_report_csv(const BenchReport& report, std::ostream& out);
BenchReport parse_report_csv(std::string_view text);

struct AliasingSeries {
  std::string algorithm;
  std::vector<store::Timestamp> xs;
  std::vector<double> ys;
  double retention = 0.0;  // output peak-to-peak over input peak-to-peak
};

struct AliasingSummary {
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  double input_peak_to_peak = 0.0;
  AliasingSeries every_nth;
  AliasingSeries minmax_lttb;
};

double peak_to_peak(std::span<const double> ys) noexcept;

/// Aggregates sin(2*pi*i/1000), i < n_in, with EveryNth and MinMaxLTTB.
AliasingSummary run_aliasing(std::size_t n_in = 1'000'000, std::size_t n_out = 1000);

/// Writes everynth.csv, minmaxlttb.csv and summary.json into out_dir.
AliasingSummary aliasing_demo(const std::filesystem::path& out_dir);

}  // namespace tsview::bench
