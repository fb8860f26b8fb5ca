#include <limits>
#include <random>

#include "doctest.h"
#include "tsview/kernels.hpp"

using namespace tsview::kernels;

TEST_CASE("bin layout: last bin absorbs the remainder") {
  const BinLayout bins{50, 20};
  CHECK(bins.width() == 2);
  CHECK(bins.begin(0) == 0);
  CHECK(bins.end(18) == 38);
  CHECK(bins.begin(19) == 38);
  CHECK(bins.end(19) == 50);
}

TEST_CASE("bucket layout covers the interior exactly") {
  for (std::size_t n : {5, 17, 100, 1001}) {
    for (std::size_t k = 1; k + 2 < n; k += 3) {
      const BucketLayout b{n, k};
      CHECK(b.begin(0) == 1);
      CHECK(b.end(k - 1) == n - 1);
      for (std::size_t j = 0; j < k; ++j) CHECK(b.begin(j) < b.end(j));
    }
  }
}

TEST_CASE("parallel kernels agree with the serial reference") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> y(0.0, 1.0);
  std::bernoulli_distribution nan(0.01);
  for (std::size_t n : {10, 333, 5000, 200'000}) {
    std::vector<std::int64_t> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = static_cast<std::int64_t>(3 * i);
      ys[i] = nan(rng) ? std::numeric_limits<double>::quiet_NaN() : y(rng);
    }
    for (std::size_t n_out : {3, 8, 100, 4000}) {
      if (n_out >= n) continue;
      CHECK(parallel::minmax(ys, n_out / 2) == serial::minmax(ys, n_out / 2));
      CHECK(parallel::lttb(xs, ys, n_out) == serial::lttb(xs, ys, n_out));
    }
  }
}

TEST_CASE("at least one worker thread") { CHECK(max_threads() >= 1); }
