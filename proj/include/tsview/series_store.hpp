#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace tsview::store {

// Nanoseconds since epoch, or a dimensionless sample index.
using Timestamp = std::int64_t;

enum class ValueKind { Numeric, Boolean, Categorical };

std::string_view to_string(ValueKind kind) noexcept;
std::optional<ValueKind> parse_value_kind(std::string_view name) noexcept;

struct NumericValues {
  std::vector<double> values;
};

struct BooleanValues {
  std::vector<bool> bits;
};

struct CategoricalValues {
  std::vector<std::int32_t> codes;  // each in [0, labels.size())
  std::vector<std::string> labels;
};

inline bool operator==(const NumericValues& a, const NumericValues& b) {
  if (a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double x = a.values[i];
    const double y = b.values[i];
    if (!(x == y || (x != x && y != y))) return false;
  }
  return true;
}
inline bool operator==(const BooleanValues& a, const BooleanValues& b) { return a.bits == b.bits; }
inline bool operator==(const CategoricalValues& a, const CategoricalValues& b) {
  return a.codes == b.codes && a.labels == b.labels;
}

class ValueArray {
 public:
  ValueArray() = default;
  ValueArray(NumericValues v) : payload_(std::move(v)) {}
  ValueArray(BooleanValues v) : payload_(std::move(v)) {}
  ValueArray(CategoricalValues v) : payload_(std::move(v)) {}

  static ValueArray numeric(std::vector<double> v) { return NumericValues{std::move(v)}; }
  static ValueArray boolean(std::vector<bool> v) { return BooleanValues{std::move(v)}; }
  static ValueArray categorical(std::vector<std::int32_t> codes,
                                std::vector<std::string> labels) {
    return CategoricalValues{std::move(codes), std::move(labels)};
  }

  ValueKind kind() const noexcept;
  std::size_t size() const noexcept;
  std::size_t payload_bytes() const noexcept;

  const NumericValues* as_numeric() const noexcept { return std::get_if<NumericValues>(&payload_); }
  const BooleanValues* as_boolean() const noexcept { return std::get_if<BooleanValues>(&payload_); }
  const CategoricalValues* as_categorical() const noexcept {
    return std::get_if<CategoricalValues>(&payload_);
  }

  friend bool operator==(const ValueArray&, const ValueArray&) = default;

 private:
  std::variant<NumericValues, BooleanValues, CategoricalValues> payload_;
};

struct EncodedValues {
  std::vector<double> values;
  std::optional<std::vector<std::string>> labels;  // categorical only
};

/// Float encoding used by the aggregation kernels and the wire format:
/// numeric passes through, booleans become 0.0/1.0, categorical codes become
/// their integer value with the label table returned alongside.
EncodedValues encode_values(const ValueArray& values);

/// Encodes only [lo, hi).
EncodedValues encode_values(const ValueArray& values, std::size_t lo, std::size_t hi);

/// Inverse of encode_values. Throws ValidationError when a value is not a
/// valid code for the requested kind.
ValueArray decode_values(ValueKind kind, std::span<const double> encoded,
                         std::optional<std::vector<std::string>> labels = std::nullopt);

struct Trace {
  std::string id;
  std::string name;
  std::vector<Timestamp> xs;
  ValueArray values;

  std::size_t row_count() const noexcept { return xs.size(); }
  std::size_t payload_bytes() const noexcept {
    return xs.size() * sizeof(Timestamp) + values.payload_bytes();
  }
};

/// Throws ValidationError unless xs is non-empty and non-decreasing, value
/// count matches, and categorical codes are in range.
void validate_trace(const Trace& trace);

// Half-open index range aliasing a stored trace.
struct IndexRange {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const noexcept { return hi - lo; }
  bool empty() const noexcept { return hi == lo; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Binary-searches the samples inside [t_start, t_end] and widens the result
/// by one sample on each side, clamped to the trace. Throws ValidationError
/// when t_start > t_end.
IndexRange slice_view(std::span<const Timestamp> xs, Timestamp t_start, Timestamp t_end);

struct GapMask {
  std::vector<std::size_t> gap_after;  // sorted; segment (i, i+1) is not drawn

  bool contains(std::size_t i) const noexcept;
  // First gap index g with lo <= g < hi, if any.
  std::optional<std::size_t> first_in(std::size_t lo, std::size_t hi) const noexcept;
};

/// Flags every delta larger than gap_factor times the median delta. Fewer
/// than three samples, or a zero median, yields an empty mask.
GapMask detect_gaps(std::span<const Timestamp> xs, double gap_factor);

struct StoredTrace {
  Trace trace;
  GapMask gaps;
};

using TraceHandle = std::shared_ptr<const StoredTrace>;

// Thread-safe registry. Readers get immutable snapshots; registration is an
// exclusive write that publishes a fully built trace.
class TraceRegistry {
 public:
  explicit TraceRegistry(double gap_factor = 4.0);

  TraceRegistry(const TraceRegistry&) = delete;
  TraceRegistry& operator=(const TraceRegistry&) = delete;

  /// Throws ConflictError on duplicate id, ValidationError on bad data.
  std::string register_trace(Trace trace);

  TraceHandle find(std::string_view id) const;
  /// Throws NotFoundError.
  TraceHandle get(std::string_view id) const;
  std::vector<TraceHandle> list() const;  // registration order
  std::size_t size() const;
  double gap_factor() const noexcept { return gap_factor_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  double gap_factor_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, TraceHandle, Hash, std::equal_to<>> by_id_;
  std::vector<TraceHandle> order_;
};

}  // namespace tsview::store
