#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

#include "tsview/aggregation.hpp"

namespace tsview::kernels::detail {

using aggregation::Point;

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// x relative to the slice origin keeps nanosecond epochs representable
// in a double; triangle areas are translation invariant.
inline double rel_x(std::span<const std::int64_t> xs, std::size_t i) noexcept {
  return static_cast<double>(xs[i] - xs[0]);
}

struct Extrema {
  std::size_t min_idx = kNone;
  std::size_t max_idx = kNone;
};

inline Extrema bin_extrema(std::span<const double> ys, std::size_t lo,
                           std::size_t hi) noexcept {
  Extrema e;
  double lo_v = 0.0;
  double hi_v = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double v = ys[i];
    if (std::isnan(v)) continue;
    if (e.min_idx == kNone) {
      e.min_idx = e.max_idx = i;
      lo_v = hi_v = v;
      continue;
    }
    if (v < lo_v) {
      lo_v = v;
      e.min_idx = i;
    }
    if (v > hi_v) {
      hi_v = v;
      e.max_idx = i;
    }
  }
  if (e.min_idx == kNone) e.min_idx = e.max_idx = lo;  // all-NaN bin
  return e;
}

// Mean of the non-NaN points of [lo, hi). An all-NaN range yields the mean x
// and a NaN y, which makes every area against it NaN.
inline Point centroid(std::span<const std::int64_t> xs,
                      std::span<const double> ys, std::size_t lo,
                      std::size_t hi) noexcept {
  double sx = 0.0;
  double sy = 0.0;
  std::size_t count = 0;
  double all_x = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double x = rel_x(xs, i);
    all_x += x;
    if (std::isnan(ys[i])) continue;
    sx += x;
    sy += ys[i];
    ++count;
  }
  if (count == 0) {
    return {all_x / static_cast<double>(hi - lo),
            std::numeric_limits<double>::quiet_NaN()};
  }
  const auto c = static_cast<double>(count);
  return {sx / c, sy / c};
}

// Arg-max of the triangle area over [lo, hi); NaN areas never win, ties go
// to the lowest index, and an all-NaN bucket yields lo.
inline std::size_t best_in_bucket(std::span<const std::int64_t> xs,
                                  std::span<const double> ys, std::size_t lo,
                                  std::size_t hi, Point prev,
                                  Point next) noexcept {
  std::size_t best = lo;
  double best_area = -std::numeric_limits<double>::infinity();
  for (std::size_t i = lo; i < hi; ++i) {
    const double area = aggregation::triangle_area(prev, {rel_x(xs, i), ys[i]}, next);
    if (area > best_area) {
      best_area = area;
      best = i;
    }
  }
  return best;
}

}  // namespace tsview::kernels::detail
