#include <string>

#include "doctest.h"
#include "nof1/error.hpp"
#include "nof1/io.hpp"

TEST_CASE("single column without header") {
  const auto in = nof1::parse_series_csv("1,0.86\n2,1.43\n3,0.65\n4,1.86");
  CHECK(in.a.values == std::vector<double>{0.86, 1.43, 0.65, 1.86});
  CHECK_FALSE(in.b.has_value());
}

TEST_CASE("headers, comments, blank lines, CRLF and quotes") {
  const auto in = nof1::parse_series_csv(
      "# provenance line\r\nindex,a,b\r\n\r\n1, 92 ,\"98\"\r\n2,76,92\r\n# trailing note\r\n");
  CHECK(in.a.values == std::vector<double>{92, 76});
  REQUIRE(in.b.has_value());
  CHECK(in.b->values == std::vector<double>{98, 92});
  CHECK(in.a.label == "A");
  CHECK(in.b->label == "B");
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(nof1::parse_series_csv(""), nof1::ParseError);
  CHECK_THROWS_AS(nof1::parse_series_csv("index,value\n"), nof1::ParseError);
  try {
    nof1::parse_series_csv("index,value\n1,1\n3,2\n");
    FAIL("expected a parse error");
  } catch (const nof1::ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(nof1::parse_series_csv("1,1\n2,nan\n"), nof1::ParseError);
  CHECK_THROWS_AS(nof1::parse_series_csv("1,1\n2,inf\n"), nof1::ParseError);
  CHECK_THROWS_AS(nof1::parse_series_csv("1,1\n2,abc\n"), nof1::ParseError);
  CHECK_THROWS_AS(nof1::parse_series_csv("1,1\n2,2,3\n"), nof1::ParseError);
  CHECK_THROWS_AS(nof1::parse_series_csv("index,foo\n1,1\n"), nof1::ParseError);
  CHECK_THROWS_AS(nof1::parse_series_csv("2,1\n1,1\n"), nof1::ParseError);
  CHECK(nof1::ParseError("x", 1).exit_code() == 2);
}

TEST_CASE("missing file is a validation error") {
  CHECK_THROWS_AS(nof1::ingest_series("/nonexistent/dir/file.csv"), nof1::ValidationError);
}

TEST_CASE("bundled datasets parse to the embedded data") {
  const auto& p = nof1::table1_patients();
  REQUIRE(p.size() == 6);
  for (const auto& patient : p) {
    const auto in = nof1::parse_series_csv(
        nof1::dataset("fibromyalgia-patient-" + std::to_string(patient.id)).csv);
    CHECK(in.a.values == patient.diffs);
  }
  const auto& d = nof1::table2_data();
  const auto pp = nof1::parse_series_csv(nof1::dataset("discounting-pre-post").csv);
  CHECK(pp.a.values == d.pre.values);
  CHECK(pp.b->values == d.post.values);
  const auto diff = nof1::parse_series_csv(nof1::dataset("discounting-difference").csv);
  CHECK(diff.a.values == std::vector<double>{-6, -16, -22, -26, -22, -18, 16, 0});
  CHECK_THROWS_AS(nof1::dataset("no-such-dataset"), nof1::ValidationError);
}

#ifdef NOF1_DATA_DIR
TEST_CASE("shipped data files match the bundled datasets") {
  for (const auto& info : nof1::datasets()) {
    CAPTURE(info.name);
    const auto file = nof1::ingest_series(std::string(NOF1_DATA_DIR) + "/" + info.name + ".csv");
    const auto embedded = nof1::parse_series_csv(info.csv);
    CHECK(file.a.values == embedded.a.values);
    CHECK(file.b.has_value() == embedded.b.has_value());
    if (file.b && embedded.b) CHECK(file.b->values == embedded.b->values);
  }
}
#endif
