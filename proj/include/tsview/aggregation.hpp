#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tsview::aggregation {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Read-only window over one series. xs is non-decreasing and has the same
// length as ys; non-numeric series arrive already encoded as float codes.
struct SeriesSlice {
  std::span<const std::int64_t> xs;
  std::span<const double> ys;

  std::size_t size() const noexcept { return ys.size(); }
};

struct AggregationResult {
  std::vector<std::size_t> indices;  // strictly increasing, into the input slice
  bool aggregated = false;           // true iff some input point was dropped
  std::size_t n_out_requested = 0;
};

enum class Algorithm { LTTB, MinMax, MinMaxLTTB, EveryNth };

// Serial runs the reference kernels; Parallel uses the OpenMP kernels.
// Both produce identical indices.
enum class Execution { Serial, Parallel };

struct AggregatorConfig {
  Algorithm algorithm = Algorithm::MinMaxLTTB;
  std::size_t minmax_ratio = 4;
  Execution execution = Execution::Parallel;
};

std::string_view to_string(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

/// Area of the triangle spanned by three points. NaN coordinates give NaN.
double triangle_area(Point a, Point b, Point c) noexcept;

/// Strided subsampling with step ceil(n_in / n_out). Throws InvalidBudget
/// when n_out == 0.
AggregationResult every_nth(std::size_t n_in, std::size_t n_out);

/// Keeps the first minimal and first maximal sample of each of floor(n_out/2)
/// equal-count bins. Throws InvalidBudget when n_out < 2.
AggregationResult minmax(SeriesSlice slice, std::size_t n_out,
                         Execution execution = Execution::Parallel);

/// Largest-Triangle-Three-Buckets. First and last sample are always kept;
/// the interior is split into n_out - 2 equal-count buckets and each bucket
/// contributes the point forming the largest triangle with the previously
/// kept point and the centroid of the next bucket.
AggregationResult lttb(SeriesSlice slice, std::size_t n_out,
                       Execution execution = Execution::Parallel);

/// LTTB over a MinMax preselection of ratio * n_out points. Falls back to
/// plain LTTB when the input is already small enough.
AggregationResult minmax_lttb(SeriesSlice slice, std::size_t n_out,
                              std::size_t ratio,
                              Execution execution = Execution::Parallel);

AggregationResult aggregate(SeriesSlice slice, std::size_t n_out,
                            const AggregatorConfig& cfg);

}  // namespace tsview::aggregation
