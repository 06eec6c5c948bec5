#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kforms {

using ParamValue = std::variant<double, std::string>;
using ParamList = std::vector<std::pair<std::string, ParamValue>>;

// One measured quantity against a reference bound expression.
struct BoundReport {
  ParamList params;
  double measured = 0.0;
  double reference = 0.0;
  double ratio = 0.0;  // NaN when the reference is not positive
  std::int64_t runtime_ms = 0;

  bool degenerate() const { return !(reference > 0.0); }

  friend bool operator==(const BoundReport& a, const BoundReport& b);
};

BoundReport make_report(ParamList params, double measured, double reference, std::int64_t runtime_ms = 0);

struct SweepResult {
  std::vector<std::string> param_keys;  // column order; used when reports is empty
  std::vector<BoundReport> reports;
  double threshold = 0.0;
  std::int64_t exceptions = 0;    // reports with ratio > threshold
  double fitted_exponent = 0.0;   // NaN when fewer than two usable points
  bool truncated = false;
};

std::int64_t count_exceptions(const std::vector<BoundReport>& reports, double threshold);

// Least-squares slope of log y against log x.
double fit_exponent(const std::vector<std::pair<double, double>>& points);

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& name);

// Doubles are written with 12 significant digits.
std::string format_number(double v);

std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);

// Writes to `path`, or to stdout when path is empty or "-". Throws io_error.
void emit_report(const SweepResult& result, ReportFormat format, const std::string& path);

// Inverse of to_csv / to_json. Numeric-looking fields become numbers.
std::vector<BoundReport> parse_csv(const std::string& text);
std::vector<BoundReport> parse_json(const std::string& text);

// The report as it reads back after emission (numbers rounded to 12 digits).
BoundReport normalized(const BoundReport& r);

}  // namespace kforms
