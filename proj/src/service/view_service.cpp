#include "tsview/view_service.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>

#include "tsview/error.hpp"

namespace tsview::service {
namespace {

struct Unit {
  double ns;
  const char* suffix;
};

constexpr std::array<Unit, 7> kUnits{{
    {1.0, "ns"},
    {1e3, "µs"},
    {1e6, "ms"},
    {1e9, "s"},
    {60e9, "m"},
    {3600e9, "h"},
    {86400e9, "d"},
}};

int integer_digits(double v) { return static_cast<int>(std::floor(std::log10(v))) + 1; }

double round_significant(double v, int digits) {
  if (v <= 0.0) return 0.0;
  const double scale = std::pow(10.0, digits - integer_digits(v));
  return std::round(v * scale) / scale;
}

std::string format_significant(double v, int digits) {
  const int decimals = v > 0.0 ? std::max(0, digits - integer_digits(v)) : 0;
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", decimals, v);
  std::string s(buf.data());
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

}  // namespace

std::string format_bin_size(std::int64_t t_start, std::int64_t t_end, std::size_t n_out) {
  if (t_end < t_start) throw ValidationError("format_bin_size: end before start");
  if (n_out == 0) throw InvalidBudget("format_bin_size: n_out must be >= 1");
  const double bin = static_cast<double>(t_end - t_start) / static_cast<double>(n_out);
  if (bin == 0.0) return "~0ns";

  std::size_t u = 0;
  for (std::size_t i = 0; i < kUnits.size(); ++i) {
    if (bin / kUnits[i].ns >= 1.0) u = i;
  }
  double value = round_significant(bin / kUnits[u].ns, 3);
  // 999.7ms rounds to 1000ms, which reads better as 1s
  while (u + 1 < kUnits.size() && value * kUnits[u].ns >= kUnits[u + 1].ns) {
    ++u;
    value = round_significant(bin / kUnits[u].ns, 3);
  }
  return "~" + format_significant(value, 3) + kUnits[u].suffix;
}

std::string decorate_trace_name(std::string_view name, bool aggregated,
                                std::string_view bin_suffix) {
  if (!aggregated) return std::string(name);
  std::string out = "[R] ";
  out += name;
  out += ' ';
  out += bin_suffix;
  return out;
}

protocol::TraceUpdate build_trace_update(const store::StoredTrace& stored,
                                         std::optional<std::int64_t> t_start,
                                         std::optional<std::int64_t> t_end,
                                         std::size_t n_out,
                                         const aggregation::AggregatorConfig& cfg) {
  const auto& trace = stored.trace;
  const std::span<const store::Timestamp> all_xs = trace.xs;
  const std::int64_t start = t_start.value_or(all_xs.front());
  const std::int64_t end = t_end.value_or(all_xs.back());
  if (start > end) throw ValidationError("view range start after end");
  if (n_out < 2) throw InvalidBudget("view n_out must be >= 2");

  const auto range = store::slice_view(all_xs, start, end);
  const auto xs = all_xs.subspan(range.lo, range.size());

  protocol::TraceUpdate update;
  update.id = trace.id;

  // Numeric traces are aggregated in place; other kinds are encoded for the
  // visible range only.
  std::vector<double> encoded;
  std::span<const double> ys;
  if (const auto* num = trace.values.as_numeric()) {
    ys = std::span<const double>(num->values).subspan(range.lo, range.size());
  } else {
    auto enc = store::encode_values(trace.values, range.lo, range.hi);
    encoded = std::move(enc.values);
    update.labels = std::move(enc.labels);
    ys = encoded;
  }

  const auto result = aggregation::aggregate({xs, ys}, n_out, cfg);

  update.xs.reserve(result.indices.size() + 8);
  update.ys.reserve(result.indices.size() + 8);
  for (std::size_t k = 0; k < result.indices.size(); ++k) {
    const std::size_t idx = result.indices[k];
    if (k > 0) {
      const std::size_t prev = result.indices[k - 1];
      if (const auto g = stored.gaps.first_in(range.lo + prev, range.lo + idx)) {
        const auto left = all_xs[*g];
        const auto right = all_xs[*g + 1];
        update.xs.push_back(left + (right - left) / 2);
        update.ys.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    update.xs.push_back(xs[idx]);
    update.ys.push_back(ys[idx]);
  }

  update.aggregated = result.aggregated;
  if (result.aggregated) {
    const std::int64_t lo = std::max(start, all_xs.front());
    const std::int64_t hi = std::max(lo, std::min(end, all_xs.back()));
    update.bin_size_ns = static_cast<std::int64_t>(
        std::llround(static_cast<double>(hi - lo) / static_cast<double>(n_out)));
    update.display_name = decorate_trace_name(trace.name, true, format_bin_size(lo, hi, n_out));
  } else {
    update.display_name = trace.name;
  }
  return update;
}

protocol::ViewResponse handle_view_request(const store::TraceRegistry& registry,
                                           const protocol::ViewRequest& req,
                                           const ServiceConfig& cfg) {
  struct Outcome {
    std::optional<protocol::TraceUpdate> update;
    std::optional<protocol::ErrorCode> error;
    std::exception_ptr failure;
  };
  const auto n = static_cast<std::int64_t>(req.updates.size());
  std::vector<Outcome> outcomes(req.updates.size());

  // Entries are independent; a single entry leaves the threads to the kernels.
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& entry = req.updates[static_cast<std::size_t>(i)];
    auto& out = outcomes[static_cast<std::size_t>(i)];
    try {
      const auto trace = registry.find(entry.id);
      if (!trace) {
        out.error = protocol::ErrorCode::NotFound;
        continue;
      }
      out.update = build_trace_update(*trace, entry.start, entry.end,
                                      entry.n_out.value_or(cfg.default_n_out), cfg.aggregator);
    } catch (const ValidationError&) {
      out.error = protocol::ErrorCode::BadRange;
    } catch (const InvalidBudget&) {
      out.error = protocol::ErrorCode::BadRange;
    } catch (...) {
      out.failure = std::current_exception();
    }
  }

  protocol::ViewResponse resp;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    if (o.failure) std::rethrow_exception(o.failure);
    if (o.update) {
      resp.traces.push_back(std::move(*o.update));
    } else {
      resp.errors.push_back({req.updates[i].id, *o.error});
    }
  }
  return resp;
}

protocol::TraceListing list_traces(const store::TraceRegistry& registry) {
  protocol::TraceListing listing;
  for (const auto& stored : registry.list()) {
    const auto& t = stored->trace;
    listing.traces.push_back({t.id, t.name, std::string(store::to_string(t.values.kind())),
                              t.row_count(), t.xs.front(), t.xs.back()});
  }
  return listing;
}

}  // namespace tsview::service
