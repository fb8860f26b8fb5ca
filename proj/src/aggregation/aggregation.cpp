#include "tsview/aggregation.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tsview/error.hpp"
#include "tsview/kernels.hpp"

namespace tsview::aggregation {
namespace {

AggregationResult identity(std::size_t n_in, std::size_t n_out) {
  AggregationResult r;
  r.indices.resize(n_in);
  std::iota(r.indices.begin(), r.indices.end(), std::size_t{0});
  r.aggregated = false;
  r.n_out_requested = n_out;
  return r;
}

AggregationResult finish(std::vector<std::size_t> indices, std::size_t n_in,
                         std::size_t n_out) {
  AggregationResult r;
  r.aggregated = indices.size() < n_in;
  r.indices = std::move(indices);
  r.n_out_requested = n_out;
  return r;
}

void require_budget(std::size_t n_out, std::size_t minimum, const char* who) {
  if (n_out < minimum) {
    throw InvalidBudget(std::string(who) + ": n_out must be >= " +
                        std::to_string(minimum) + ", got " + std::to_string(n_out));
  }
}

void require_aligned(SeriesSlice slice) {
  if (slice.xs.size() != slice.ys.size()) {
    throw ValidationError("series slice: xs and ys differ in length");
  }
}

std::vector<std::size_t> lttb_kernel(std::span<const std::int64_t> xs,
                                     std::span<const double> ys,
                                     std::size_t n_out, Execution execution) {
  if (n_out == 2) return {0, ys.size() - 1};
  return execution == Execution::Serial ? kernels::serial::lttb(xs, ys, n_out)
                                        : kernels::parallel::lttb(xs, ys, n_out);
}

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::LTTB: return "lttb";
    case Algorithm::MinMax: return "minmax";
    case Algorithm::MinMaxLTTB: return "minmaxlttb";
    case Algorithm::EveryNth: return "everynth";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (auto a : {Algorithm::LTTB, Algorithm::MinMax, Algorithm::MinMaxLTTB,
                 Algorithm::EveryNth}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

double triangle_area(Point a, Point b, Point c) noexcept {
  return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

AggregationResult every_nth(std::size_t n_in, std::size_t n_out) {
  require_budget(n_out, 1, "every_nth");
  if (n_in <= n_out) return identity(n_in, n_out);
  const std::size_t step = (n_in + n_out - 1) / n_out;
  std::vector<std::size_t> out;
  out.reserve(n_out);
  for (std::size_t i = 0; i < n_in; i += step) out.push_back(i);
  return finish(std::move(out), n_in, n_out);
}

AggregationResult minmax(SeriesSlice slice, std::size_t n_out, Execution execution) {
  require_budget(n_out, 2, "minmax");
  require_aligned(slice);
  const std::size_t n = slice.size();
  if (n <= n_out) return identity(n, n_out);
  const std::size_t n_bins = n_out / 2;
  auto indices = execution == Execution::Serial
                     ? kernels::serial::minmax(slice.ys, n_bins)
                     : kernels::parallel::minmax(slice.ys, n_bins);
  return finish(std::move(indices), n, n_out);
}

AggregationResult lttb(SeriesSlice slice, std::size_t n_out, Execution execution) {
  require_budget(n_out, 2, "lttb");
  require_aligned(slice);
  const std::size_t n = slice.size();
  if (n <= n_out) return identity(n, n_out);
  return finish(lttb_kernel(slice.xs, slice.ys, n_out, execution), n, n_out);
}

AggregationResult minmax_lttb(SeriesSlice slice, std::size_t n_out,
                              std::size_t ratio, Execution execution) {
  require_budget(n_out, 2, "minmax_lttb");
  require_aligned(slice);
  if (ratio < 1) throw InvalidBudget("minmax_lttb: ratio must be >= 1");
  const std::size_t n = slice.size();
  if (n_out > std::numeric_limits<std::size_t>::max() / ratio ||
      n <= ratio * n_out) {
    return lttb(slice, n_out, execution);
  }

  std::vector<std::size_t> pre = minmax(slice, ratio * n_out, execution).indices;
  if (pre.front() != 0) pre.insert(pre.begin(), 0);
  if (pre.back() != n - 1) pre.push_back(n - 1);

  if (pre.size() <= n_out) return finish(std::move(pre), n, n_out);

  std::vector<std::int64_t> sub_x(pre.size());
  std::vector<double> sub_y(pre.size());
  for (std::size_t i = 0; i < pre.size(); ++i) {
    sub_x[i] = slice.xs[pre[i]];
    sub_y[i] = slice.ys[pre[i]];
  }
  auto picked = lttb_kernel(sub_x, sub_y, n_out, execution);
  for (auto& i : picked) i = pre[i];
  return finish(std::move(picked), n, n_out);
}

AggregationResult aggregate(SeriesSlice slice, std::size_t n_out,
                            const AggregatorConfig& cfg) {
  require_budget(n_out, 2, "aggregate");
  switch (cfg.algorithm) {
    case Algorithm::LTTB: return lttb(slice, n_out, cfg.execution);
    case Algorithm::MinMax: return minmax(slice, n_out, cfg.execution);
    case Algorithm::MinMaxLTTB:
      return minmax_lttb(slice, n_out, cfg.minmax_ratio, cfg.execution);
    case Algorithm::EveryNth:
      require_aligned(slice);
      return every_nth(slice.size(), n_out);
  }
  throw ValidationError("aggregate: unknown algorithm");
}

}  // namespace tsview::aggregation
