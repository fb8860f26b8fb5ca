#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "tsview/csv_ingest.hpp"
#include "tsview/error.hpp"

using namespace tsview;
using namespace tsview::ingest;

namespace {

struct TempCsv {
  std::filesystem::path path;
  explicit TempCsv(const std::string& content) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("tsview_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".csv");
    std::ofstream(path) << content;
  }
  ~TempCsv() { std::filesystem::remove(path); }
};

std::string rows(std::size_t n, auto&& make_row) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += make_row(i) + "\n";
  return s;
}

}  // namespace

TEST_CASE("parse_timestamp") {
  CHECK(parse_timestamp("123") == 123);
  CHECK(parse_timestamp(" -5 ") == -5);
  CHECK(parse_timestamp("1.5") == 1'500'000'000);
  CHECK(parse_timestamp("2e-9") == 2);
  CHECK(parse_timestamp("1970-01-01T00:00:01Z") == 1'000'000'000);
  CHECK(parse_timestamp("2020-09-13T12:26:40Z") == 1'600'000'000'000'000'000);
  CHECK(parse_timestamp("2020-09-13T14:26:40.25+02:00") == 1'600'000'000'250'000'000);
  CHECK(parse_timestamp("2020-09-13 12:26:40.000000001z") == 1'600'000'000'000'000'001);
  CHECK_THROWS_AS(parse_timestamp("yesterday"), ParseError);
  CHECK_THROWS_AS(parse_timestamp("2020-02-30T00:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_timestamp("2020-09-13T12:26:40"), ParseError);
}

TEST_CASE("parse_bool") {
  CHECK(parse_bool("on") == true);
  CHECK(parse_bool("OFF") == false);
  CHECK(parse_bool(" True ") == true);
  CHECK(parse_bool("0") == false);
  CHECK_FALSE(parse_bool("maybe").has_value());
}

TEST_CASE("split_csv_line handles quotes") {
  CHECK(split_csv_line(R"(a,"b,c","d""e",)") == std::vector<std::string>{"a", "b,c", "d\"e", ""});
}

TEST_CASE("three-column CSV gives two traces") {
  TempCsv csv("time,eeg,emg\n" + rows(100, [](std::size_t i) {
                return std::to_string(i * 1000) + "," + std::to_string(i * 0.5) + "," + std::to_string(-double(i));
              }));
  store::TraceRegistry reg;
  const auto ids = ingest_csv(reg, csv.path, infer_csv_schema(csv.path));
  CHECK(ids == std::vector<std::string>{"eeg", "emg"});
  CHECK(reg.get("eeg")->trace.row_count() == 100);
  CHECK(reg.get("emg")->trace.values.as_numeric()->values[3] == -3.0);
  CHECK(reg.get("eeg")->trace.xs[2] == 2000);
}

TEST_CASE("time going backwards names the row") {
  TempCsv csv("time,v\n" + rows(10, [](std::size_t i) {
                const std::size_t t = i == 6 ? 1 : i * 10;  // data row 7
                return std::to_string(t) + ",1";
              }));
  store::TraceRegistry reg;
  try {
    ingest_csv(reg, csv.path, infer_csv_schema(csv.path));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("row 7") != std::string::npos);
  }
  CHECK(reg.size() == 0);
}

TEST_CASE("unparseable cell names row and column") {
  TempCsv csv("time,v\n0,1\n1,2\n2,abc\n");
  store::TraceRegistry reg;
  CsvSchema schema{"time", {{"v", store::ValueKind::Numeric}}};
  try {
    ingest_csv(reg, csv.path, schema);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("'v'") != std::string::npos);
  }
}

TEST_CASE("boolean and categorical columns") {
  TempCsv csv("time,pump,stage\n"
              "2024-01-01T00:00:00Z,on,W\n"
              "2024-01-01T00:00:30Z,off,N1\n"
              "2024-01-01T00:01:00Z,on,W\n"
              "2024-01-01T00:01:30Z,on,REM\n");
  const auto schema = infer_csv_schema(csv.path);
  REQUIRE(schema.value_columns.size() == 2);
  CHECK(schema.value_columns[0].kind == store::ValueKind::Boolean);
  CHECK(schema.value_columns[1].kind == store::ValueKind::Categorical);

  store::TraceRegistry reg;
  ingest_csv(reg, csv.path, schema);
  const auto& pump = reg.get("pump")->trace.values;
  REQUIRE(pump.as_boolean() != nullptr);
  CHECK(pump.as_boolean()->bits == std::vector<bool>{true, false, true, true});
  // round trip through the float encoding
  CHECK(store::decode_values(store::ValueKind::Boolean, store::encode_values(pump).values) == pump);

  const auto* stage = reg.get("stage")->trace.values.as_categorical();
  REQUIRE(stage != nullptr);
  CHECK(stage->labels == std::vector<std::string>{"W", "N1", "REM"});
  CHECK(stage->codes == std::vector<std::int32_t>{0, 1, 0, 2});
  CHECK(reg.get("stage")->trace.xs[1] - reg.get("stage")->trace.xs[0] == 30'000'000'000);
}

TEST_CASE("declared schema overrides inference and empty numeric cells are NaN") {
  TempCsv csv("a,timestamp,b\n1,0,x\n,5,y\n3,9,x\n");
  const auto inferred = infer_csv_schema(csv.path);
  CHECK(inferred.time_column == "timestamp");
  store::TraceRegistry reg;
  ingest_csv(reg, csv.path, {"timestamp", {{"a", store::ValueKind::Numeric}}});
  CHECK(reg.size() == 1);
  CHECK(std::isnan(reg.get("a")->trace.values.as_numeric()->values[1]));
  CHECK_THROWS_AS(ingest_csv(reg, csv.path, {"timestamp", {{"missing", store::ValueKind::Numeric}}}),
                  ParseError);
}
