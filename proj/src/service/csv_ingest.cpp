#include "tsview/csv_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_map>

#include "tsview/error.hpp"

namespace tsview::ingest {
namespace {

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
std::optional<T> parse_whole(std::string_view s) noexcept {
  T v{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return v;
}

std::optional<double> parse_number(std::string_view cell) noexcept {
  cell = trim(cell);
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  return parse_whole<double>(cell);
}

// Fixed-width unsigned digits at s[pos, pos + width).
std::optional<int> digits(std::string_view s, std::size_t pos, std::size_t width) noexcept {
  if (pos + width > s.size()) return std::nullopt;
  int v = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

std::optional<store::Timestamp> parse_rfc3339(std::string_view s) noexcept {
  using namespace std::chrono;
  // YYYY-MM-DDTHH:MM:SS
  const auto year = digits(s, 0, 4);
  const auto mon = digits(s, 5, 2);
  const auto day = digits(s, 8, 2);
  const auto hour = digits(s, 11, 2);
  const auto min = digits(s, 14, 2);
  const auto sec = digits(s, 17, 2);
  if (!year || !mon || !day || !hour || !min || !sec) return std::nullopt;
  if (s[4] != '-' || s[7] != '-' || s[13] != ':' || s[16] != ':') return std::nullopt;
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
  if (*hour > 23 || *min > 59 || *sec > 60) return std::nullopt;

  const year_month_day ymd{std::chrono::year{*year}, month{static_cast<unsigned>(*mon)},
                           std::chrono::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok()) return std::nullopt;

  std::size_t pos = 19;
  std::int64_t frac_ns = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::int64_t scale = 100'000'000;
    const std::size_t begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      frac_ns += (s[pos] - '0') * scale;
      scale /= 10;
      ++pos;
    }
    if (pos == begin) return std::nullopt;
  }

  std::int64_t offset_min = 0;
  if (pos >= s.size()) return std::nullopt;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    const auto oh = digits(s, pos + 1, 2);
    const auto om = digits(s, pos + 4, 2);
    if (!oh || !om || s[pos + 3] != ':') return std::nullopt;
    offset_min = (*oh * 60 + *om) * (s[pos] == '-' ? -1 : 1);
    pos += 6;
  } else {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;

  const auto days = sys_days{ymd}.time_since_epoch().count();
  const std::int64_t secs = static_cast<std::int64_t>(days) * 86400 + *hour * 3600 +
                            *min * 60 + *sec - offset_min * 60;
  return secs * 1'000'000'000 + frac_ns;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string where(std::size_t row, std::string_view column) {
  return "row " + std::to_string(row) + ", column '" + std::string(column) + "'";
}

struct CsvFile {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvFile read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open CSV file: " + path.string());
  CsvFile f;
  std::string line;
  bool have_header = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    if (!have_header) {
      f.header = std::move(cells);
      have_header = true;
      continue;
    }
    ++row;
    if (cells.size() != f.header.size()) {
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(f.header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    }
    f.rows.push_back(std::move(cells));
  }
  if (!have_header) throw ParseError("CSV file has no header: " + path.string());
  return f;
}

std::size_t column_index(const CsvFile& f, std::string_view name) {
  const auto it = std::find(f.header.begin(), f.header.end(), name);
  if (it == f.header.end()) throw ParseError("CSV has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - f.header.begin());
}

}  // namespace

store::Timestamp parse_timestamp(std::string_view cell) {
  const auto s = trim(cell);
  if (const auto ns = parse_whole<std::int64_t>(s)) return *ns;
  if (const auto secs = parse_whole<double>(s); secs && std::isfinite(*secs)) {
    return static_cast<store::Timestamp>(std::llround(*secs * 1e9));
  }
  if (const auto t = parse_rfc3339(s)) return *t;
  throw ParseError("unparseable timestamp '" + std::string(s) + "'");
}

std::optional<bool> parse_bool(std::string_view cell) noexcept {
  const auto s = lower(trim(cell));
  if (s == "true" || s == "on" || s == "yes" || s == "1" || s == "t") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0" || s == "f") return false;
  return std::nullopt;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

CsvSchema infer_csv_schema(const std::filesystem::path& path) {
  const auto f = read_csv(path);
  CsvSchema schema;
  std::size_t time_idx = 0;
  for (std::size_t i = 0; i < f.header.size(); ++i) {
    const auto name = lower(trim(f.header[i]));
    if (name == "time" || name == "timestamp") {
      time_idx = i;
      break;
    }
  }
  schema.time_column = f.header.at(time_idx);

  for (std::size_t c = 0; c < f.header.size(); ++c) {
    if (c == time_idx) continue;
    bool numeric = true;
    bool boolean = true;
    for (const auto& row : f.rows) {
      const auto cell = trim(row[c]);
      if (numeric && !cell.empty() && !parse_whole<double>(cell)) numeric = false;
      if (boolean && !parse_bool(cell)) boolean = false;
      if (!numeric && !boolean) break;
    }
    // 0/1 columns read as numbers; only word tokens make a boolean column
    store::ValueKind kind = store::ValueKind::Categorical;
    if (numeric) {
      kind = store::ValueKind::Numeric;
    } else if (boolean && !f.rows.empty()) {
      kind = store::ValueKind::Boolean;
    }
    schema.value_columns.push_back({f.header[c], kind});
  }
  return schema;
}

std::vector<std::string> ingest_csv(store::TraceRegistry& registry,
                                    const std::filesystem::path& path,
                                    const CsvSchema& schema) {
  const auto f = read_csv(path);
  const std::size_t time_idx = column_index(f, schema.time_column);

  std::vector<store::Timestamp> xs;
  xs.reserve(f.rows.size());
  for (std::size_t r = 0; r < f.rows.size(); ++r) {
    const std::size_t row = r + 1;
    store::Timestamp t = 0;
    try {
      t = parse_timestamp(f.rows[r][time_idx]);
    } catch (const ParseError& e) {
      throw ParseError(where(row, schema.time_column) + ": " + e.what());
    }
    if (!xs.empty() && t < xs.back()) {
      throw ValidationError("time goes backwards at row " + std::to_string(row));
    }
    xs.push_back(t);
  }

  std::vector<store::Trace> traces;
  for (const auto& spec : schema.value_columns) {
    const std::size_t c = column_index(f, spec.name);
    store::Trace trace{spec.name, spec.name, xs, {}};
    switch (spec.kind) {
      case store::ValueKind::Numeric: {
        std::vector<double> v;
        v.reserve(f.rows.size());
        for (std::size_t r = 0; r < f.rows.size(); ++r) {
          const auto x = parse_number(f.rows[r][c]);
          if (!x) throw ParseError(where(r + 1, spec.name) + ": not a number");
          v.push_back(*x);
        }
        trace.values = store::ValueArray::numeric(std::move(v));
        break;
      }
      case store::ValueKind::Boolean: {
        std::vector<bool> v;
        v.reserve(f.rows.size());
        for (std::size_t r = 0; r < f.rows.size(); ++r) {
          const auto b = parse_bool(f.rows[r][c]);
          if (!b) throw ParseError(where(r + 1, spec.name) + ": not a boolean");
          v.push_back(*b);
        }
        trace.values = store::ValueArray::boolean(std::move(v));
        break;
      }
      case store::ValueKind::Categorical: {
        std::vector<std::int32_t> codes;
        std::vector<std::string> labels;
        std::unordered_map<std::string, std::int32_t> lookup;
        codes.reserve(f.rows.size());
        for (const auto& row : f.rows) {
          std::string label(trim(row[c]));
          auto [it, inserted] = lookup.try_emplace(label, static_cast<std::int32_t>(labels.size()));
          if (inserted) labels.push_back(label);
          codes.push_back(it->second);
        }
        trace.values = store::ValueArray::categorical(std::move(codes), std::move(labels));
        break;
      }
    }
    traces.push_back(std::move(trace));
  }

  std::vector<std::string> ids;
  for (auto& t : traces) ids.push_back(registry.register_trace(std::move(t)));
  return ids;
}

}  // namespace tsview::ingest
