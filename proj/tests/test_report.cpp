#include <cmath>
#include <limits>

#include "doctest.h"
#include "kforms/error.hpp"
#include "kforms/report.hpp"

using namespace kforms;

namespace {

SweepResult three_reports() {
  SweepResult s;
  s.param_keys = {"q", "weights"};
  s.threshold = 1.0;
  s.reports.push_back(make_report({{"q", 101.0}, {"weights", std::string("ones")}}, 12.5, 100.0, 3));
  s.reports.push_back(make_report({{"q", 103.0}, {"weights", std::string("a,b \"c\"")}}, 1.0 / 3.0, 2.0, 0));
  s.reports.push_back(make_report({{"q", 107.0}, {"weights", std::string("x")}}, 5.0, 0.0, 1));
  return s;
}

}  // namespace

TEST_CASE("make_report") {
  auto r = make_report({{"q", 7.0}}, 3.0, 6.0);
  CHECK(r.ratio == 0.5);
  CHECK_FALSE(r.degenerate());
  auto d = make_report({{"q", 7.0}}, 3.0, 0.0);
  CHECK(d.degenerate());
  CHECK(std::isnan(d.ratio));
  CHECK(make_report({}, 0.0, -1.0).degenerate());
}

TEST_CASE("csv layout") {
  SweepResult empty;
  empty.param_keys = {"q", "H"};
  CHECK(to_csv(empty) == "q,H,measured,reference,ratio,runtime_ms\n");

  const std::string csv = to_csv(three_reports());
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("\"a,b \"\"c\"\"\"") != std::string::npos);
  CHECK(csv.find("101,ones,12.5,100,0.125,3\n") != std::string::npos);
}

TEST_CASE("json layout") {
  SweepResult empty;
  empty.param_keys = {"q"};
  auto parsed = parse_json(to_json(empty));
  CHECK(parsed.empty());
  const std::string js = to_json(three_reports());
  CHECK(js.find("null") != std::string::npos);  // NaN ratio
}

TEST_CASE("round trip through both formats") {
  auto s = three_reports();
  for (auto reports : {parse_csv(to_csv(s)), parse_json(to_json(s))}) {
    REQUIRE(reports.size() == s.reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) CHECK(reports[i] == normalized(s.reports[i]));
  }
  CHECK(normalized(s.reports[1]).measured == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(parse_csv(to_csv(s))[0] == s.reports[0]);
}

TEST_CASE("format_number") {
  CHECK(format_number(0.125) == "0.125");
  CHECK(format_number(1e20) == "1e+20");
  CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("exceptions") {
  auto s = three_reports();
  CHECK(count_exceptions(s.reports, 0.1) == 2);
  CHECK(count_exceptions(s.reports, 0.15) == 1);
  CHECK(count_exceptions(s.reports, 1.0) == 0);  // NaN never counts
}

TEST_CASE("fit_exponent") {
  CHECK(fit_exponent({{1, 1}, {2, 4}, {4, 16}}) == doctest::Approx(2.0));
  CHECK(fit_exponent({{10, 5}, {100, 5}}) == doctest::Approx(0.0));
  CHECK(fit_exponent({{2, 8}, {3, 27}, {5, 125}, {7, 343}}) == doctest::Approx(3.0));
  CHECK_THROWS_AS(fit_exponent({{1, 1}}), kforms::error);
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {1, 2}}), kforms::error);
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {2, 0}}), kforms::error);
  CHECK_THROWS_AS(fit_exponent({{-1, 1}, {2, 3}}), kforms::error);
}

TEST_CASE("emit to an unwritable path") {
  CHECK_THROWS_AS(emit_report(three_reports(), ReportFormat::csv, "/nonexistent/dir/out.csv"), kforms::error);
  CHECK(parse_report_format("json") == ReportFormat::json);
  CHECK_THROWS_AS(parse_report_format("xml"), kforms::error);
}
