#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "edm/errors.hpp"
#include "edm/ingest.hpp"
#include "support/synthetic.hpp"

using namespace edm;

namespace {

std::string row_csv(const RawRow& r) {
  std::string s;
  for (std::size_t c = 0; c < r.size(); ++c) {
    if (c) s += ',';
    s += std::to_string(r[c]);
  }
  return s;
}

RawRow ones() {
  RawRow r;
  r.fill(1);
  return r;
}

std::string error_of(const std::string& csv) {
  std::istringstream in(csv);
  try {
    parse_csv(in, "mem");
  } catch (const DataError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("canonical schema has the 33 columns in order with their ranges") {
  const auto& s = canonical_schema();
  REQUIRE(s.size() == 33);
  CHECK(s[0].name == "instr");
  CHECK(s[1].name == "class");
  CHECK(s[2].name == "nb.repeat");
  CHECK(s[3].name == "attendance");
  CHECK(s[4].name == "difficulty");
  CHECK(s[5].name == "Q1");
  CHECK(s[32].name == "Q28");
  CHECK(s[0].accepts(3));
  CHECK_FALSE(s[0].accepts(4));
  CHECK(s[1].accepts(13));
  CHECK_FALSE(s[1].accepts(0));
  CHECK(s[2].accepts(0));
  CHECK(s[2].accepts(17));  // open-ended repeat count
  CHECK_FALSE(s[2].accepts(-1));
  CHECK(s[3].accepts(0));
  CHECK_FALSE(s[3].accepts(5));
  CHECK_FALSE(s[4].accepts(0));
  CHECK(s[16].role == ColumnRole::CourseQuestion);     // Q12
  CHECK(s[17].role == ColumnRole::InstructorQuestion); // Q13
}

TEST_CASE("parse keeps row order and values") {
  RawRow a = ones(), b = ones();
  a[0] = 3; a[1] = 13; a[2] = 0; a[3] = 4;
  b[0] = 2; b[1] = 7; b[2] = 3; b[3] = 0; b[32] = 5;
  std::istringstream in(testing::canonical_header() + "\n" + row_csv(a) + "\n" + row_csv(b) + "\n");
  auto t = parse_csv(in);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == a);
  CHECK(t.rows[1] == b);
  CHECK(t.schema.size() == 33);
}

TEST_CASE("header is matched case-insensitively and columns are reordered") {
  // swap instr and class in the file, shout one name, pad another
  auto header = testing::canonical_header();
  header.replace(0, std::string("instr,class").size(), " CLASS ,Instr");
  std::string line = "2,3";  // class=2, instr=3
  for (std::size_t c = 2; c < 33; ++c) line += ",1";
  std::istringstream in(header + "\r\n" + line + "\r\n");
  auto t = parse_csv(in);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][0] == 3);
  CHECK(t.rows[0][1] == 2);
}

TEST_CASE("header with 32 names is a schema mismatch") {
  auto header = testing::canonical_header();
  header = header.substr(0, header.rfind(','));
  auto msg = error_of(header + "\n");
  CHECK(msg.find("32 columns") != std::string::npos);
}

TEST_CASE("unknown and duplicate header names are rejected") {
  auto header = testing::canonical_header();
  auto unknown = header;
  unknown.replace(unknown.find("Q28"), 3, "Q29");
  CHECK(error_of(unknown + "\n").find("unknown header column 'Q29'") != std::string::npos);
  auto dup = header;
  dup.replace(dup.find("Q28"), 3, "Q27");
  CHECK(error_of(dup + "\n").find("duplicate") != std::string::npos);
}

TEST_CASE("range violation names the data row and column") {
  std::string csv = testing::canonical_header() + "\n";
  for (int i = 1; i <= 10; ++i) {
    RawRow r = ones();
    if (i == 7) r[4] = 9;  // difficulty
    csv += row_csv(r) + "\n";
  }
  auto msg = error_of(csv);
  CHECK(msg.find("row 7") != std::string::npos);
  CHECK(msg.find("difficulty") != std::string::npos);
  CHECK(msg.find("value 9") != std::string::npos);
}

TEST_CASE("non-integer cells are reported with position") {
  auto line = row_csv(ones());
  line.replace(line.find(','), 2, ",x");  // class cell
  auto msg = error_of(testing::canonical_header() + "\n" + row_csv(ones()) + "\n" + line + "\n");
  CHECK(msg.find("row 2") != std::string::npos);
  CHECK(msg.find("class") != std::string::npos);
  CHECK(msg.find("not an integer") != std::string::npos);

  auto frac = row_csv(ones());
  frac.replace(0, 1, "1.5");
  CHECK(error_of(testing::canonical_header() + "\n" + frac + "\n").find("not an integer") !=
        std::string::npos);
}

TEST_CASE("short data rows are rejected") {
  auto line = row_csv(ones());
  line = line.substr(0, line.rfind(','));
  CHECK(error_of(testing::canonical_header() + "\n" + line + "\n").find("32 cells") !=
        std::string::npos);
}

TEST_CASE("large repeat counts are accepted") {
  RawRow r = ones();
  r[2] = 9;
  std::istringstream in(testing::canonical_header() + "\n" + row_csv(r) + "\n");
  CHECK(parse_csv(in).rows.at(0)[2] == 9);
}

TEST_CASE("missing file and empty file raise data errors") {
  CHECK_THROWS_AS(load_csv("/nonexistent/definitely/missing.csv"), DataError);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_csv(empty), DataError);
}

TEST_CASE("load_csv is deterministic and accepts CRLF") {
  auto lf = testing::write_temp("ingest_lf.csv", testing::synthetic_csv(200, 3));
  auto crlf = testing::write_temp("ingest_crlf.csv", testing::synthetic_csv(200, 3, true));
  auto a = load_csv(lf);
  auto b = load_csv(lf);
  auto c = load_csv(crlf);
  REQUIRE(a.rows.size() == 200);
  CHECK(a.rows == b.rows);
  CHECK(a.rows == c.rows);
}

TEST_CASE("validate_schema on a constant single row") {
  RawTable t{canonical_schema(), {ones()}};
  auto s = validate_schema(t);
  CHECK(s.rows == 1);
  CHECK(s.ok());
  for (const auto& c : s.columns) {
    CHECK(c.min == 1);
    CHECK(c.max == 1);
    CHECK(c.distinct() == 1);
  }
}

TEST_CASE("validate_schema flags out-of-range values without failing") {
  RawRow bad = ones();
  bad[0] = 4;
  RawTable t{canonical_schema(), {ones(), bad}};
  auto s = validate_schema(t);
  CHECK_FALSE(s.ok());
  CHECK_FALSE(s.column("instr").within_range);
  CHECK(s.column("class").within_range);
  CHECK(s.column("instr").value_counts.at(4) == 1);
  CHECK(s.column("instr").max == 4);
}

TEST_CASE("validate_schema counts repeat values") {
  auto t = load_csv(testing::write_temp("ingest_counts.csv", testing::synthetic_csv(500, 11)));
  auto s = validate_schema(t);
  std::size_t total = 0;
  for (const auto& [v, n] : s.column("nb.repeat").value_counts) total += n;
  CHECK(total == 500);
  CHECK(s.column("instr").min >= 1);
  CHECK(s.column("instr").max <= 3);
  CHECK(s.ok());
}

TEST_CASE("every loaded cell passes its range check") {
  for (std::uint32_t seed = 0; seed < 5; ++seed) {
    auto t = load_csv(testing::write_temp("ingest_prop.csv", testing::synthetic_csv(100, seed)));
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) CHECK(t.schema[c].accepts(row[c]));
    }
  }
}
