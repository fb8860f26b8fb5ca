#include "kernel_detail.hpp"
#include "tsview/kernels.hpp"

namespace tsview::kernels {

std::size_t BucketLayout::begin(std::size_t j) const noexcept {
  const auto interior = static_cast<unsigned __int128>(n - 2);
  return 1 + static_cast<std::size_t>(interior * j / k);
}

namespace serial {

std::vector<std::size_t> minmax(std::span<const double> ys, std::size_t n_bins) {
  const BinLayout bins{ys.size(), n_bins};
  std::vector<std::size_t> out;
  out.reserve(2 * n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    const auto e = detail::bin_extrema(ys, bins.begin(b), bins.end(b));
    if (e.min_idx == e.max_idx) {
      out.push_back(e.min_idx);
    } else if (e.min_idx < e.max_idx) {
      out.push_back(e.min_idx);
      out.push_back(e.max_idx);
    } else {
      out.push_back(e.max_idx);
      out.push_back(e.min_idx);
    }
  }
  return out;
}

std::vector<std::size_t> lttb(std::span<const std::int64_t> xs,
                              std::span<const double> ys, std::size_t n_out) {
  const std::size_t n = ys.size();
  const BucketLayout buckets{n, n_out - 2};

  std::vector<std::size_t> out;
  out.reserve(n_out);
  out.push_back(0);

  detail::Point prev{0.0, ys[0]};
  for (std::size_t j = 0; j < buckets.k; ++j) {
    const detail::Point next =
        j + 1 < buckets.k
            ? detail::centroid(xs, ys, buckets.begin(j + 1), buckets.end(j + 1))
            : detail::Point{detail::rel_x(xs, n - 1), ys[n - 1]};
    const std::size_t pick =
        detail::best_in_bucket(xs, ys, buckets.begin(j), buckets.end(j), prev, next);
    out.push_back(pick);
    prev = {detail::rel_x(xs, pick), ys[pick]};
  }

  out.push_back(n - 1);
  return out;
}

}  // namespace serial
}  // namespace tsview::kernels
