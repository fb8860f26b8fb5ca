#include "tsview/series_store.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "tsview/error.hpp"

namespace tsview::store {

std::string_view to_string(ValueKind kind) noexcept {
  switch (kind) {
    case ValueKind::Numeric: return "numeric";
    case ValueKind::Boolean: return "boolean";
    case ValueKind::Categorical: return "categorical";
  }
  return "unknown";
}

std::optional<ValueKind> parse_value_kind(std::string_view name) noexcept {
  for (auto k : {ValueKind::Numeric, ValueKind::Boolean, ValueKind::Categorical}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

ValueKind ValueArray::kind() const noexcept {
  return static_cast<ValueKind>(payload_.index());
}

std::size_t ValueArray::size() const noexcept {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, NumericValues>) return p.values.size();
        if constexpr (std::is_same_v<T, BooleanValues>) return p.bits.size();
        if constexpr (std::is_same_v<T, CategoricalValues>) return p.codes.size();
      },
      payload_);
}

std::size_t ValueArray::payload_bytes() const noexcept {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, NumericValues>) return p.values.size() * sizeof(double);
        if constexpr (std::is_same_v<T, BooleanValues>) return (p.bits.size() + 7) / 8;
        if constexpr (std::is_same_v<T, CategoricalValues>) {
          std::size_t bytes = p.codes.size() * sizeof(std::int32_t);
          for (const auto& l : p.labels) bytes += l.size();
          return bytes;
        }
      },
      payload_);
}

EncodedValues encode_values(const ValueArray& values) {
  return encode_values(values, 0, values.size());
}

EncodedValues encode_values(const ValueArray& values, std::size_t lo, std::size_t hi) {
  hi = std::min(hi, values.size());
  lo = std::min(lo, hi);
  EncodedValues out;
  out.values.reserve(hi - lo);
  if (const auto* num = values.as_numeric()) {
    out.values.assign(num->values.begin() + static_cast<std::ptrdiff_t>(lo),
                      num->values.begin() + static_cast<std::ptrdiff_t>(hi));
  } else if (const auto* b = values.as_boolean()) {
    for (std::size_t i = lo; i < hi; ++i) out.values.push_back(b->bits[i] ? 1.0 : 0.0);
  } else if (const auto* cat = values.as_categorical()) {
    for (std::size_t i = lo; i < hi; ++i) out.values.push_back(static_cast<double>(cat->codes[i]));
    out.labels = cat->labels;
  }
  return out;
}

ValueArray decode_values(ValueKind kind, std::span<const double> encoded,
                         std::optional<std::vector<std::string>> labels) {
  switch (kind) {
    case ValueKind::Numeric:
      return ValueArray::numeric({encoded.begin(), encoded.end()});
    case ValueKind::Boolean: {
      std::vector<bool> bits;
      bits.reserve(encoded.size());
      for (double v : encoded) {
        if (v != 0.0 && v != 1.0) throw ValidationError("boolean decode: value is not 0 or 1");
        bits.push_back(v == 1.0);
      }
      return ValueArray::boolean(std::move(bits));
    }
    case ValueKind::Categorical: {
      if (!labels) throw ValidationError("categorical decode: missing label table");
      std::vector<std::int32_t> codes;
      codes.reserve(encoded.size());
      const auto n_labels = static_cast<double>(labels->size());
      for (double v : encoded) {
        if (!(v >= 0.0 && v < n_labels) || std::trunc(v) != v) {
          throw ValidationError("categorical decode: value is not a label code");
        }
        codes.push_back(static_cast<std::int32_t>(v));
      }
      return ValueArray::categorical(std::move(codes), std::move(*labels));
    }
  }
  throw ValidationError("decode: unknown value kind");
}

void validate_trace(const Trace& trace) {
  if (trace.id.empty()) throw ValidationError("trace id must not be empty");
  if (trace.xs.empty()) throw ValidationError("trace '" + trace.id + "' has no samples");
  if (trace.xs.size() != trace.values.size()) {
    throw ValidationError("trace '" + trace.id + "': timestamp and value counts differ");
  }
  const auto bad = std::is_sorted_until(trace.xs.begin(), trace.xs.end());
  if (bad != trace.xs.end()) {
    throw ValidationError("trace '" + trace.id + "': timestamps decrease at index " +
                          std::to_string(bad - trace.xs.begin()));
  }
  if (const auto* cat = trace.values.as_categorical()) {
    const auto n_labels = static_cast<std::int32_t>(cat->labels.size());
    for (auto code : cat->codes) {
      if (code < 0 || code >= n_labels) {
        throw ValidationError("trace '" + trace.id + "': categorical code out of range");
      }
    }
  }
}

IndexRange slice_view(std::span<const Timestamp> xs, Timestamp t_start, Timestamp t_end) {
  if (t_start > t_end) throw ValidationError("slice_view: start after end");
  const std::size_t n = xs.size();
  if (n == 0) return {};
  const auto a = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), t_start) - xs.begin());
  // one past the last sample <= t_end
  const auto b1 = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), t_end) - xs.begin());
  const std::size_t lo = a == 0 ? 0 : a - 1;
  const std::size_t hi = std::min(b1 + 1, n);
  return {lo, hi};
}

bool GapMask::contains(std::size_t i) const noexcept {
  return std::binary_search(gap_after.begin(), gap_after.end(), i);
}

std::optional<std::size_t> GapMask::first_in(std::size_t lo, std::size_t hi) const noexcept {
  const auto it = std::lower_bound(gap_after.begin(), gap_after.end(), lo);
  if (it == gap_after.end() || *it >= hi) return std::nullopt;
  return *it;
}

GapMask detect_gaps(std::span<const Timestamp> xs, double gap_factor) {
  GapMask mask;
  if (xs.size() < 3 || !(gap_factor > 0.0)) return mask;

  const std::size_t m = xs.size() - 1;
  double median = 0.0;
  {
    std::vector<Timestamp> deltas(m);
    for (std::size_t i = 0; i < m; ++i) deltas[i] = xs[i + 1] - xs[i];
    const auto mid = deltas.begin() + static_cast<std::ptrdiff_t>(m / 2);
    std::nth_element(deltas.begin(), mid, deltas.end());
    median = static_cast<double>(*mid);
    if (m % 2 == 0) {
      const auto lower = *std::max_element(deltas.begin(), mid);
      median = 0.5 * (median + static_cast<double>(lower));
    }
  }
  if (median <= 0.0) return mask;

  const double threshold = gap_factor * median;
  for (std::size_t i = 0; i < m; ++i) {
    if (static_cast<double>(xs[i + 1] - xs[i]) > threshold) mask.gap_after.push_back(i);
  }
  return mask;
}

TraceRegistry::TraceRegistry(double gap_factor) : gap_factor_(gap_factor) {
  if (!(gap_factor > 0.0)) throw ValidationError("gap_factor must be positive");
}

std::string TraceRegistry::register_trace(Trace trace) {
  validate_trace(trace);
  {
    std::shared_lock lock(mutex_);
    if (by_id_.contains(trace.id)) throw ConflictError("trace id already registered: " + trace.id);
  }
  auto stored = std::make_shared<StoredTrace>();
  stored->gaps = detect_gaps(trace.xs, gap_factor_);
  stored->trace = std::move(trace);
  std::string id = stored->trace.id;

  std::unique_lock lock(mutex_);
  if (by_id_.contains(id)) throw ConflictError("trace id already registered: " + id);
  by_id_.emplace(id, stored);
  order_.push_back(std::move(stored));
  return id;
}

TraceHandle TraceRegistry::find(std::string_view id) const {
  std::shared_lock lock(mutex_);
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : it->second;
}

TraceHandle TraceRegistry::get(std::string_view id) const {
  auto t = find(id);
  if (!t) throw NotFoundError("unknown trace id: " + std::string(id));
  return t;
}

std::vector<TraceHandle> TraceRegistry::list() const {
  std::shared_lock lock(mutex_);
  return order_;
}

std::size_t TraceRegistry::size() const {
  std::shared_lock lock(mutex_);
  return order_.size();
}

}  // namespace tsview::store
