#include <omp.h>

#include <algorithm>
#include <cstdint>

#include "kernel_detail.hpp"
#include "tsview/kernels.hpp"

namespace tsview::kernels {

int max_threads() noexcept { return omp_get_max_threads(); }

namespace parallel {

std::vector<std::size_t> minmax(std::span<const double> ys, std::size_t n_bins) {
  const BinLayout bins{ys.size(), n_bins};
  std::vector<detail::Extrema> per_bin(n_bins);

  const auto nb = static_cast<std::int64_t>(n_bins);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    per_bin[ub] = detail::bin_extrema(ys, bins.begin(ub), bins.end(ub));
  }

  std::vector<std::size_t> out;
  out.reserve(2 * n_bins);
  for (const auto& e : per_bin) {
    if (e.min_idx == e.max_idx) {
      out.push_back(e.min_idx);
    } else {
      out.push_back(std::min(e.min_idx, e.max_idx));
      out.push_back(std::max(e.min_idx, e.max_idx));
    }
  }
  return out;
}

// Bucket centroids do not depend on earlier selections, so they are computed
// up front in parallel; the arg-max sweep is inherently sequential.
std::vector<std::size_t> lttb(std::span<const std::int64_t> xs,
                              std::span<const double> ys, std::size_t n_out) {
  const std::size_t n = ys.size();
  const BucketLayout buckets{n, n_out - 2};

  std::vector<detail::Point> next(buckets.k);
  const auto nk = static_cast<std::int64_t>(buckets.k);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < nk - 1; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    next[uj] = detail::centroid(xs, ys, buckets.begin(uj + 1), buckets.end(uj + 1));
  }
  next[buckets.k - 1] = {detail::rel_x(xs, n - 1), ys[n - 1]};

  std::vector<std::size_t> out;
  out.reserve(n_out);
  out.push_back(0);
  detail::Point prev{0.0, ys[0]};
  for (std::size_t j = 0; j < buckets.k; ++j) {
    const std::size_t pick =
        detail::best_in_bucket(xs, ys, buckets.begin(j), buckets.end(j), prev, next[j]);
    out.push_back(pick);
    prev = {detail::rel_x(xs, pick), ys[pick]};
  }
  out.push_back(n - 1);
  return out;
}

}  // namespace parallel
}  // namespace tsview::kernels
