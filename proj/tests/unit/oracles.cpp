#include "unit/oracles.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace oracle {
namespace {

std::vector<std::size_t> all(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace

std::vector<std::size_t> every_nth(std::size_t n_in, std::size_t n_out) {
  if (n_in <= n_out) return all(n_in);
  const auto step = static_cast<std::size_t>(std::ceil(static_cast<double>(n_in) / static_cast<double>(n_out)));
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k * step < n_in; ++k) out.push_back(k * step);
  return out;
}

std::vector<std::size_t> minmax(const std::vector<double>& ys, std::size_t n_out) {
  const std::size_t n = ys.size();
  if (n <= n_out) return all(n);
  const std::size_t bins = n_out / 2;
  const std::size_t width = n / bins;
  std::set<std::size_t> picked;
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t lo = b * width;
    const std::size_t hi = (b == bins - 1) ? n : lo + width;
    std::vector<std::size_t> finite;
    for (std::size_t i = lo; i < hi; ++i) {
      if (!std::isnan(ys[i])) finite.push_back(i);
    }
    if (finite.empty()) {
      picked.insert(lo);
      continue;
    }
    std::size_t mn = finite[0];
    std::size_t mx = finite[0];
    for (auto i : finite) {
      if (ys[i] < ys[mn]) mn = i;
      if (ys[i] > ys[mx]) mx = i;
    }
    picked.insert(mn);
    picked.insert(mx);
  }
  return {picked.begin(), picked.end()};
}

std::vector<std::size_t> lttb(const std::vector<std::int64_t>& xs,
                              const std::vector<double>& ys, std::size_t n_out) {
  const std::size_t n = ys.size();
  if (n <= n_out) return all(n);
  if (n_out == 2) return {0, n - 1};

  const std::size_t k = n_out - 2;
  std::vector<std::vector<std::size_t>> buckets(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // bucket j holds i when floor(j*(n-2)/k) <= i-1 < floor((j+1)*(n-2)/k)
    std::size_t j = 0;
    while (j + 1 < k && static_cast<std::size_t>((static_cast<unsigned long long>(j + 1) * (n - 2)) / k) <= i - 1) ++j;
    buckets[j].push_back(i);
  }

  auto X = [&](std::size_t i) { return static_cast<double>(xs[i] - xs[0]); };
  auto area = [](double ax, double ay, double bx, double by, double cx, double cy) {
    return std::fabs((bx - ax) * (cy - ay) - (cx - ax) * (by - ay)) / 2.0;
  };

  std::vector<std::size_t> out{0};
  std::size_t prev = 0;
  for (std::size_t j = 0; j < k; ++j) {
    double nx = 0.0;
    double ny = 0.0;
    if (j + 1 < k) {
      double sx = 0.0, sy = 0.0, ax = 0.0;
      std::size_t c = 0;
      for (auto i : buckets[j + 1]) {
        ax += X(i);
        if (std::isnan(ys[i])) continue;
        sx += X(i);
        sy += ys[i];
        ++c;
      }
      if (c == 0) {
        nx = ax / static_cast<double>(buckets[j + 1].size());
        ny = std::numeric_limits<double>::quiet_NaN();
      } else {
        nx = sx / static_cast<double>(c);
        ny = sy / static_cast<double>(c);
      }
    } else {
      nx = X(n - 1);
      ny = ys[n - 1];
    }
    std::size_t best = buckets[j].front();
    bool have = false;
    double best_area = 0.0;
    for (auto i : buckets[j]) {
      const double a = area(X(prev), ys[prev], X(i), ys[i], nx, ny);
      if (std::isnan(a)) continue;
      if (!have || a > best_area) {
        best = i;
        best_area = a;
        have = true;
      }
    }
    out.push_back(best);
    prev = best;
  }
  out.push_back(n - 1);
  return out;
}

std::vector<std::size_t> minmax_lttb(const std::vector<std::int64_t>& xs,
                                     const std::vector<double>& ys, std::size_t n_out,
                                     std::size_t ratio) {
  const std::size_t n = ys.size();
  if (n <= ratio * n_out) return lttb(xs, ys, n_out);
  auto pre = minmax(ys, ratio * n_out);
  std::set<std::size_t> s(pre.begin(), pre.end());
  s.insert(0);
  s.insert(n - 1);
  pre.assign(s.begin(), s.end());
  std::vector<std::int64_t> sx;
  std::vector<double> sy;
  for (auto i : pre) {
    sx.push_back(xs[i]);
    sy.push_back(ys[i]);
  }
  auto picked = lttb(sx, sy, n_out);
  for (auto& i : picked) i = pre[i];
  return picked;
}

}  // namespace oracle
