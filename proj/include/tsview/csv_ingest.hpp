#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsview/series_store.hpp"

namespace tsview::ingest {

struct ColumnSpec {
  std::string name;
  store::ValueKind kind = store::ValueKind::Numeric;
};

struct CsvSchema {
  std::string time_column;
  std::vector<ColumnSpec> value_columns;
};

/// Integer cells are nanoseconds, decimal cells are seconds, anything else
/// must be an RFC 3339 timestamp. Throws ParseError.
store::Timestamp parse_timestamp(std::string_view cell);

/// true/false, on/off, yes/no, 1/0, t/f; case-insensitive.
std::optional<bool> parse_bool(std::string_view cell) noexcept;

/// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

/// Time column is "time"/"timestamp" when present, otherwise the first
/// column. Each value column is numeric when every non-empty cell parses as
/// a number, boolean when every cell is a boolean token, else categorical.
CsvSchema infer_csv_schema(const std::filesystem::path& path);

/// Registers one trace per value column, in schema order; trace ids are the
/// column names. Rows are numbered from 1 after the header. Throws
/// ValidationError for unsorted time and ParseError for bad cells, both
/// naming the row.
std::vector<std::string> ingest_csv(store::TraceRegistry& registry,
                                    const std::filesystem::path& path,
                                    const CsvSchema& schema);

}  // namespace tsview::ingest
