#include "tsview/protocol.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "tsview/error.hpp"

namespace tsview::protocol {
namespace {

using Json = nlohmann::ordered_json;

template <typename T>
Json optional_to_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

const Json& field(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const Json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t int_value(const Json& v, const char* key) {
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::optional<std::int64_t> nullable_int(const Json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (v.is_null()) return std::nullopt;
  return int_value(v, key);
}

const Json& array_field(const Json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return v;
}

Json parse_object(std::string_view text) {
  Json j = Json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  if (!j.is_object()) throw ParseError("expected a JSON object");
  return j;
}

void append_string(std::string& out, const std::string& s) {
  out += Json(s).dump(-1, ' ', false, Json::error_handler_t::replace);
}

template <typename T>
void append_number(std::string& out, T v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

std::optional<ErrorCode> parse_error_code(std::string_view s) {
  if (s == "not_found") return ErrorCode::NotFound;
  if (s == "bad_range") return ErrorCode::BadRange;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::BadRange: return "bad_range";
  }
  return "unknown";
}

std::string serialize(const ViewRequest& msg) {
  Json updates = Json::array();
  for (const auto& u : msg.updates) {
    Json e = Json::object();
    e["id"] = u.id;
    e["start"] = optional_to_json(u.start);
    e["end"] = optional_to_json(u.end);
    if (u.n_out) e["n_out"] = *u.n_out;
    updates.push_back(std::move(e));
  }
  Json j = Json::object();
  j["updates"] = std::move(updates);
  return j.dump();
}

// Written by hand rather than through a DOM: full-resolution responses can
// carry millions of points.
std::string serialize(const ViewResponse& msg) {
  std::string out;
  std::size_t points = 0;
  for (const auto& t : msg.traces) points += t.xs.size();
  out.reserve(64 + points * 40);

  out += R"({"traces":[)";
  for (std::size_t ti = 0; ti < msg.traces.size(); ++ti) {
    const auto& t = msg.traces[ti];
    if (ti) out += ',';
    out += R"({"id":)";
    append_string(out, t.id);
    out += R"(,"x":[)";
    for (std::size_t i = 0; i < t.xs.size(); ++i) {
      if (i) out += ',';
      append_number(out, t.xs[i]);
    }
    out += R"(],"y":[)";
    for (std::size_t i = 0; i < t.ys.size(); ++i) {
      if (i) out += ',';
      if (std::isfinite(t.ys[i])) {
        append_number(out, t.ys[i] == 0.0 ? 0.0 : t.ys[i]);  // no "-0"
      } else {
        out += "null";
      }
    }
    out += R"(],"labels":)";
    if (t.labels) {
      out += '[';
      for (std::size_t i = 0; i < t.labels->size(); ++i) {
        if (i) out += ',';
        append_string(out, (*t.labels)[i]);
      }
      out += ']';
    } else {
      out += "null";
    }
    out += R"(,"aggregated":)";
    out += t.aggregated ? "true" : "false";
    out += R"(,"bin_size_ns":)";
    if (t.bin_size_ns) {
      append_number(out, *t.bin_size_ns);
    } else {
      out += "null";
    }
    out += R"(,"display_name":)";
    append_string(out, t.display_name);
    out += '}';
  }
  out += R"(],"errors":[)";
  for (std::size_t i = 0; i < msg.errors.size(); ++i) {
    if (i) out += ',';
    out += R"({"id":)";
    append_string(out, msg.errors[i].id);
    out += R"(,"code":")";
    out += to_string(msg.errors[i].code);
    out += R"("})";
  }
  out += "]}";
  return out;
}

std::string serialize(const TraceListing& msg) {
  Json traces = Json::array();
  for (const auto& t : msg.traces) {
    Json e = Json::object();
    e["id"] = t.id;
    e["name"] = t.name;
    e["kind"] = t.kind;
    e["n"] = t.n;
    e["t0"] = t.t0;
    e["t1"] = t.t1;
    traces.push_back(std::move(e));
  }
  Json j = Json::object();
  j["traces"] = std::move(traces);
  return j.dump();
}

ViewRequest parse_view_request(std::string_view text) {
  const Json j = parse_object(text);
  ViewRequest req;
  for (const auto& e : array_field(j, "updates")) {
    if (!e.is_object()) throw ParseError("update entries must be objects");
    ViewUpdate u;
    u.id = string_field(e, "id");
    u.start = nullable_int(e, "start");
    u.end = nullable_int(e, "end");
    if (const auto it = e.find("n_out"); it != e.end() && !it->is_null()) {
      const auto n = int_value(*it, "n_out");
      if (n < 0) throw ParseError("field 'n_out' must be non-negative");
      u.n_out = static_cast<std::size_t>(n);
    }
    req.updates.push_back(std::move(u));
  }
  return req;
}

ViewResponse parse_view_response(std::string_view text) {
  const Json j = parse_object(text);
  ViewResponse resp;
  for (const auto& e : array_field(j, "traces")) {
    if (!e.is_object()) throw ParseError("trace entries must be objects");
    TraceUpdate t;
    t.id = string_field(e, "id");
    for (const auto& x : array_field(e, "x")) t.xs.push_back(int_value(x, "x"));
    for (const auto& y : array_field(e, "y")) {
      if (y.is_null()) {
        t.ys.push_back(std::numeric_limits<double>::quiet_NaN());
      } else if (y.is_number()) {
        t.ys.push_back(y.get<double>());
      } else {
        throw ParseError("field 'y' must hold numbers or null");
      }
    }
    if (t.xs.size() != t.ys.size()) throw ParseError("x and y differ in length");
    if (const auto& labels = field(e, "labels"); !labels.is_null()) {
      if (!labels.is_array()) throw ParseError("field 'labels' must be an array or null");
      std::vector<std::string> out;
      for (const auto& l : labels) {
        if (!l.is_string()) throw ParseError("labels must be strings");
        out.push_back(l.get<std::string>());
      }
      t.labels = std::move(out);
    }
    const auto& agg = field(e, "aggregated");
    if (!agg.is_boolean()) throw ParseError("field 'aggregated' must be a boolean");
    t.aggregated = agg.get<bool>();
    t.bin_size_ns = nullable_int(e, "bin_size_ns");
    t.display_name = string_field(e, "display_name");
    resp.traces.push_back(std::move(t));
  }
  for (const auto& e : array_field(j, "errors")) {
    if (!e.is_object()) throw ParseError("error entries must be objects");
    const auto code = parse_error_code(string_field(e, "code"));
    if (!code) throw ParseError("unknown error code");
    resp.errors.push_back({string_field(e, "id"), *code});
  }
  return resp;
}

TraceListing parse_trace_listing(std::string_view text) {
  const Json j = parse_object(text);
  TraceListing listing;
  for (const auto& e : array_field(j, "traces")) {
    if (!e.is_object()) throw ParseError("trace entries must be objects");
    TraceDescriptor d;
    d.id = string_field(e, "id");
    d.name = string_field(e, "name");
    d.kind = string_field(e, "kind");
    const auto n = int_value(field(e, "n"), "n");
    if (n < 0) throw ParseError("field 'n' must be non-negative");
    d.n = static_cast<std::size_t>(n);
    d.t0 = int_value(field(e, "t0"), "t0");
    d.t1 = int_value(field(e, "t1"), "t1");
    listing.traces.push_back(std::move(d));
  }
  return listing;
}

}  // namespace tsview::protocol
