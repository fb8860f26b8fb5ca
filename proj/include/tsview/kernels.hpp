#pragma once

// Low-level selection kernels behind tsview::aggregation. Each kernel exists
// twice: a straightforward serial version and an OpenMP version. The two must
// agree index for index; tests and the benchmark target compare them.
//
// Kernels assume the caller has already checked budgets and handled the
// identity case (n_in <= n_out).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tsview::kernels {

// Bin b of n_bins equal-count bins over [0, n): [b * w, (b + 1) * w) with
// w = n / n_bins, the last bin extending to n.
struct BinLayout {
  std::size_t n = 0;
  std::size_t n_bins = 0;

  std::size_t width() const noexcept { return n / n_bins; }
  std::size_t begin(std::size_t b) const noexcept { return b * width(); }
  std::size_t end(std::size_t b) const noexcept {
    return b + 1 == n_bins ? n : (b + 1) * width();
  }
};

// Interior bucket j of k buckets over [1, n - 1).
struct BucketLayout {
  std::size_t n = 0;
  std::size_t k = 0;

  std::size_t begin(std::size_t j) const noexcept;
  std::size_t end(std::size_t j) const noexcept { return begin(j + 1); }
};

namespace serial {

std::vector<std::size_t> minmax(std::span<const double> ys, std::size_t n_bins);

// Requires 2 < n_out < xs.size().
std::vector<std::size_t> lttb(std::span<const std::int64_t> xs,
                              std::span<const double> ys, std::size_t n_out);

}  // namespace serial

namespace parallel {

std::vector<std::size_t> minmax(std::span<const double> ys, std::size_t n_bins);

std::vector<std::size_t> lttb(std::span<const std::int64_t> xs,
                              std::span<const double> ys, std::size_t n_out);

}  // namespace parallel

int max_threads() noexcept;

}  // namespace tsview::kernels
