#pragma once

// JSON wire messages of the HTTP API. Key order is fixed, timestamps are
// integer nanoseconds and NaN values travel as null, so
// serialize(parse(s)) == s for any string produced by serialize.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsview::protocol {

struct ViewUpdate {
  std::string id;
  std::optional<std::int64_t> start;  // null: full extent
  std::optional<std::int64_t> end;
  std::optional<std::size_t> n_out;   // absent: server default

  friend bool operator==(const ViewUpdate&, const ViewUpdate&) = default;
};

struct ViewRequest {
  std::vector<ViewUpdate> updates;

  friend bool operator==(const ViewRequest&, const ViewRequest&) = default;
};

struct TraceUpdate {
  std::string id;
  std::vector<std::int64_t> xs;
  std::vector<double> ys;  // NaN marks a line break
  std::optional<std::vector<std::string>> labels;
  bool aggregated = false;
  std::optional<std::int64_t> bin_size_ns;
  std::string display_name;
};

enum class ErrorCode { NotFound, BadRange };

std::string_view to_string(ErrorCode code) noexcept;

struct EntryError {
  std::string id;
  ErrorCode code = ErrorCode::NotFound;

  friend bool operator==(const EntryError&, const EntryError&) = default;
};

struct ViewResponse {
  std::vector<TraceUpdate> traces;
  std::vector<EntryError> errors;
};

struct TraceDescriptor {
  std::string id;
  std::string name;
  std::string kind;
  std::size_t n = 0;
  std::int64_t t0 = 0;
  std::int64_t t1 = 0;

  friend bool operator==(const TraceDescriptor&, const TraceDescriptor&) = default;
};

struct TraceListing {
  std::vector<TraceDescriptor> traces;

  friend bool operator==(const TraceListing&, const TraceListing&) = default;
};

std::string serialize(const ViewRequest& msg);
std::string serialize(const ViewResponse& msg);
std::string serialize(const TraceListing& msg);

// All parsers throw ParseError on malformed input.
ViewRequest parse_view_request(std::string_view text);
ViewResponse parse_view_response(std::string_view text);
TraceListing parse_trace_listing(std::string_view text);

}  // namespace tsview::protocol
