#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "slideopt/dataio.hpp"

// Sparse-format parsing with line-located errors, densification, shortest
// round-trip double formatting, and trace serialization in both formats.

using namespace slideopt;

namespace {

SparseDataset parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

// the thrown ParseError's 1-based line number, or 0 if nothing was thrown
long error_line(const std::string& text) {
  try {
    parse_string(text);
  } catch (const ParseError& e) {
    return e.line;
  }
  return 0;
}

}  // namespace

TEST_SUITE("dataio") {

TEST_CASE("well-formed sparse lines parse with labels, gaps and comments") {
  const std::string text =
      "# leading comment\n"
      "+1 1:0.5 3:-2.25\n"
      "\n"
      "-1 2:1e-3   7:4\n"
      "3.5 1:1 2:2 3:3  # trailing comment\n"
      "0\r\n";
  SparseDataset data = parse_string(text);

  REQUIRE(data.rows.size() == 4);
  CHECK(data.max_index == 7);

  CHECK(data.rows[0].label == 1.0);
  REQUIRE(data.rows[0].entries.size() == 2);
  CHECK(data.rows[0].entries[0].index == 1);
  CHECK(data.rows[0].entries[0].value == 0.5);
  CHECK(data.rows[0].entries[1].index == 3);
  CHECK(data.rows[0].entries[1].value == -2.25);

  CHECK(data.rows[1].label == -1.0);
  CHECK(data.rows[1].entries[1].index == 7);
  CHECK(data.rows[1].entries[1].value == 4.0);

  CHECK(data.rows[2].label == 3.5);
  CHECK(data.rows[2].entries.size() == 3);  // comment stripped mid-line

  CHECK(data.rows[3].label == 0.0);
  CHECK(data.rows[3].entries.empty());  // label-only line, CRLF stripped
}

TEST_CASE("malformed lines raise errors naming the physical line") {
  CHECK(error_line("abc 1:2.0\n") == 1);
  CHECK(error_line("1 0:2.0\n") == 1);          // indices are 1-based
  CHECK(error_line("1 -3:2.0\n") == 1);
  CHECK(error_line("1 2:1.0 2:3.0\n") == 1);    // repeated index
  CHECK(error_line("1 3:1.0 2:3.0\n") == 1);    // decreasing index
  CHECK(error_line("1 4\n") == 1);              // missing colon
  CHECK(error_line("1 1:xyz\n") == 1);          // unparseable value
  CHECK(error_line("1 1:\n") == 1);             // empty value
  CHECK(error_line("1 1:1.0\n-1 bad\n") == 2);  // error on the second row
  // blank and comment lines still advance the reported line number
  CHECK(error_line("# header\n\n1 1:1.0\n1 0:1\n") == 4);

  try {
    parse_string("1 5:1 2:2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    CHECK(std::string(e.what()).find("strictly increasing") !=
          std::string::npos);
  }
}

TEST_CASE("densify zero-fills gaps and validates the column count") {
  SparseDataset data = parse_string("1 1:2 3:4\n-1 2:5\n");
  Dataset dense = data.densify();

  REQUIRE(dense.samples() == 2);
  REQUIRE(dense.features() == 3);
  CHECK(dense.x.at(0, 0) == 2.0);
  CHECK(dense.x.at(0, 1) == 0.0);
  CHECK(dense.x.at(0, 2) == 4.0);
  CHECK(dense.x.at(1, 1) == 5.0);
  CHECK(dense.y[0] == 1.0);
  CHECK(dense.y[1] == -1.0);

  Dataset padded = data.densify(5);
  CHECK(padded.features() == 5);
  CHECK(padded.x.at(0, 4) == 0.0);

  CHECK_THROWS_AS(data.densify(2), std::invalid_argument);
  SparseDataset empty;
  CHECK_THROWS_AS(empty.densify(), std::invalid_argument);
}

TEST_CASE("writing and reparsing preserves every value exactly") {
  SparseDataset data;
  SparseRow r1;
  r1.label = 1.0;
  r1.entries = {{1, 0.1}, {4, 1.0 / 3.0}, {9, -3.75}};
  SparseRow r2;
  r2.label = -2.5;
  r2.entries = {{2, 1e-17}};
  data.rows = {r1, r2};
  data.max_index = 9;

  std::ostringstream out;
  write_libsvm(out, data);
  SparseDataset back = parse_string(out.str());

  REQUIRE(back.rows.size() == 2);
  CHECK(back.max_index == 9);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.rows[i].label == data.rows[i].label);
    REQUIRE(back.rows[i].entries.size() == data.rows[i].entries.size());
    for (std::size_t j = 0; j < back.rows[i].entries.size(); ++j) {
      CHECK(back.rows[i].entries[j].index == data.rows[i].entries[j].index);
      CHECK(back.rows[i].entries[j].value == data.rows[i].entries[j].value);
    }
  }

  // a second write of the reparsed data is byte-identical
  std::ostringstream out2;
  write_libsvm(out2, back);
  CHECK(out2.str() == out.str());
}

TEST_CASE("format_double emits the shortest string that parses back exactly") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.5) == "-0.5");
  CHECK(format_double(0.1) == "0.1");

  const std::vector<double> values = {0.0,    1.0,      -1.0,  0.1,
                                      1.0 / 3.0, 1e-300, 5e-324,
                                      1.7976931348623157e308, -2.25e-7};
  for (double v : values) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("csv traces round-trip records, optionals and the config line") {
  RunTrace trace;
  trace.config_json = R"({"method":"sliding","eps":1e-06})";
  TraceRecord full;
  full.k = 0;
  full.dist_sq = 0.25;
  full.r_gap = 1.0 / 3.0;
  full.lyapunov = 7.5;
  full.comm_rounds = 2;
  full.grad_p = 2;
  full.grad_q = 5;
  full.inner_iters = 4;
  TraceRecord bare;
  bare.k = 1;
  bare.comm_rounds = 4;
  bare.p_calls = 2;
  bare.q_calls = 9;
  trace.records = {full, bare};
  trace.solution = {0.5, -0.25};

  const std::string text = trace_to_string(trace, TraceFormat::csv);

  // fixed layout: config comment, then the canonical header
  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "# config: " + trace.config_json);
  REQUIRE(std::getline(lines, line));
  CHECK(line ==
        "k,dist_sq,r_gap,lyapunov,comm_rounds,grad_p,grad_q,P_calls,Q_calls,"
        "inner_iters");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "0,0.25,0.3333333333333333,7.5,2,2,5,0,0,4");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "1,,,,4,0,0,2,9,0");  // absent metrics as empty fields

  std::istringstream in(text);
  RunTrace back = read_trace(in, TraceFormat::csv);
  CHECK(back.config_json == trace.config_json);
  REQUIRE(back.records.size() == 2);
  CHECK(*back.records[0].dist_sq == 0.25);
  CHECK(*back.records[0].r_gap == 1.0 / 3.0);
  CHECK(*back.records[0].lyapunov == 7.5);
  CHECK(back.records[0].grad_q == 5);
  CHECK_FALSE(back.records[1].dist_sq.has_value());
  CHECK_FALSE(back.records[1].r_gap.has_value());
  CHECK(back.records[1].q_calls == 9);
}

TEST_CASE("json traces round-trip the solution vector bit-for-bit") {
  RunTrace trace;
  trace.config_json = R"({"seed":3})";
  TraceRecord row;
  row.k = 0;
  row.dist_sq = 1.0 / 3.0;
  row.comm_rounds = 2;
  trace.records = {row};
  trace.solution = {0.1, 1.0 / 3.0, -2.25e-7};

  std::istringstream in(trace_to_string(trace, TraceFormat::json));
  RunTrace back = read_trace(in, TraceFormat::json);

  CHECK(back.config_json == trace.config_json);
  REQUIRE(back.records.size() == 1);
  CHECK(*back.records[0].dist_sq == 1.0 / 3.0);
  CHECK_FALSE(back.records[0].r_gap.has_value());
  REQUIRE(back.solution.size() == 3);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(back.solution[j] == trace.solution[j]);
}

TEST_CASE("trace reading rejects missing headers and ragged rows") {
  std::istringstream no_header("1,2,3\n");
  CHECK_THROWS_AS(read_trace(no_header, TraceFormat::csv), ParseError);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_trace(empty, TraceFormat::csv), ParseError);

  const std::string header =
      "k,dist_sq,r_gap,lyapunov,comm_rounds,grad_p,grad_q,P_calls,Q_calls,"
      "inner_iters\n";
  std::istringstream ragged(header + "0,1,2\n");
  CHECK_THROWS_AS(read_trace(ragged, TraceFormat::csv), ParseError);

  std::istringstream bad_num(header + "0,x,,,0,0,0,0,0,0\n");
  CHECK_THROWS_AS(read_trace(bad_num, TraceFormat::csv), ParseError);
}

}  // TEST_SUITE
