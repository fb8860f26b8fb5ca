#pragma once

// Straightforward reference selections used as test oracles. Written
// independently of src/aggregation: explicit bucket lists, no shared helpers.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

std::vector<std::size_t> every_nth(std::size_t n_in, std::size_t n_out);

std::vector<std::size_t> minmax(const std::vector<double>& ys, std::size_t n_out);

std::vector<std::size_t> lttb(const std::vector<std::int64_t>& xs,
                              const std::vector<double>& ys, std::size_t n_out);

std::vector<std::size_t> minmax_lttb(const std::vector<std::int64_t>& xs,
                                     const std::vector<double>& ys, std::size_t n_out,
                                     std::size_t ratio);

}  // namespace oracle
