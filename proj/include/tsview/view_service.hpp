#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tsview/aggregation.hpp"
#include "tsview/protocol.hpp"
#include "tsview/series_store.hpp"

namespace tsview::service {

struct ServiceConfig {
  std::size_t default_n_out = 1000;
  aggregation::AggregatorConfig aggregator{};
};

/// "~" followed by (t_end - t_start) / n_out in the largest unit of
/// ns, µs, ms, s, m, h, d that keeps the value >= 1, to 3 significant digits.
std::string format_bin_size(std::int64_t t_start, std::int64_t t_end, std::size_t n_out);

std::string decorate_trace_name(std::string_view name, bool aggregated,
                                std::string_view bin_suffix);

/// Slices, aggregates and decorates one trace. Null bounds mean the trace's
/// full extent. A NaN break at the gap midpoint is inserted between
/// consecutive retained points that straddle a detected gap.
protocol::TraceUpdate build_trace_update(const store::StoredTrace& trace,
                                         std::optional<std::int64_t> t_start,
                                         std::optional<std::int64_t> t_end,
                                         std::size_t n_out,
                                         const aggregation::AggregatorConfig& cfg);

/// Answers only the requested traces, in request order. Unknown ids and
/// invalid ranges or budgets become per-entry errors.
protocol::ViewResponse handle_view_request(const store::TraceRegistry& registry,
                                           const protocol::ViewRequest& req,
                                           const ServiceConfig& cfg);

protocol::TraceListing list_traces(const store::TraceRegistry& registry);

}  // namespace tsview::service
