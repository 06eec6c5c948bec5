#include "kforms/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "kforms/error.hpp"

namespace kforms {
namespace {

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string param_text(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  return std::get<std::string>(v);
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<double> parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool same_number(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

bool operator==(const BoundReport& a, const BoundReport& b) {
  if (a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].first != b.params[i].first) return false;
    const auto& x = a.params[i].second;
    const auto& y = b.params[i].second;
    if (x.index() != y.index()) return false;
    if (x.index() == 0 ? !same_number(std::get<0>(x), std::get<0>(y)) : std::get<1>(x) != std::get<1>(y))
      return false;
  }
  return same_number(a.measured, b.measured) && same_number(a.reference, b.reference) &&
         same_number(a.ratio, b.ratio) && a.runtime_ms == b.runtime_ms;
}

BoundReport make_report(ParamList params, double measured, double reference, std::int64_t runtime_ms) {
  BoundReport r{std::move(params), measured, reference, 0.0, runtime_ms};
  r.ratio = reference > 0.0 ? measured / reference : std::numeric_limits<double>::quiet_NaN();
  return r;
}

std::int64_t count_exceptions(const std::vector<BoundReport>& reports, double threshold) {
  std::int64_t n = 0;
  for (const auto& r : reports)
    if (r.ratio > threshold) ++n;
  return n;
}

double fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw error(errc::insufficient_points, "need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) throw error(errc::nonpositive_value, "log-log fit needs positive values");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(points.size());
  const double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-300) throw error(errc::insufficient_points, "all x values coincide");
  return (n * sxy - sx * sy) / den;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw error(errc::invalid_argument, "unknown format '" + name + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream out;
  std::vector<std::string> keys = result.param_keys;
  if (keys.empty() && !result.reports.empty())
    for (const auto& [k, v] : result.reports.front().params) keys.push_back(k);
  for (const auto& k : keys) out << csv_field(k) << ',';
  out << "measured,reference,ratio,runtime_ms\n";
  for (const auto& r : result.reports) {
    for (const auto& [k, v] : r.params) out << csv_field(param_text(v)) << ',';
    out << format_number(r.measured) << ',' << format_number(r.reference) << ',' << format_number(r.ratio) << ','
        << r.runtime_ms << '\n';
  }
  return out.str();
}

// Written by hand so numbers keep the 12-digit form used by the CSV writer.
std::string to_json(const SweepResult& result) {
  if (result.reports.empty()) return "[]\n";
  auto number = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
  auto key = [](const std::string& k) { return nlohmann::json(k).dump() + ": "; };
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    out << "  {\n";
    for (const auto& [k, v] : r.params) {
      out << "    " << key(k);
      if (const auto* d = std::get_if<double>(&v))
        out << number(*d);
      else
        out << nlohmann::json(std::get<std::string>(v)).dump();
      out << ",\n";
    }
    out << "    " << key("measured") << number(r.measured) << ",\n";
    out << "    " << key("reference") << number(r.reference) << ",\n";
    out << "    " << key("ratio") << number(r.ratio) << ",\n";
    out << "    " << key("runtime_ms") << r.runtime_ms << "\n";
    out << (i + 1 < result.reports.size() ? "  },\n" : "  }\n");
  }
  out << "]\n";
  return out.str();
}

void emit_report(const SweepResult& result, ReportFormat format, const std::string& path) {
  const std::string text = format == ReportFormat::csv ? to_csv(result) : to_json(result);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error(errc::io_error, "cannot open " + path);
  f << text;
  if (!f) throw error(errc::io_error, "write failed: " + path);
}

std::vector<BoundReport> parse_csv(const std::string& text) {
  auto rows = split_csv(text);
  std::vector<BoundReport> out;
  if (rows.empty()) return out;
  const auto& header = rows.front();
  if (header.size() < 4) throw error(errc::invalid_argument, "CSV header too short");
  const std::size_t np = header.size() - 4;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != header.size()) throw error(errc::invalid_argument, "ragged CSV row");
    BoundReport r;
    for (std::size_t c = 0; c < np; ++c) {
      if (auto d = parse_double(row[c]))
        r.params.emplace_back(header[c], *d);
      else
        r.params.emplace_back(header[c], row[c]);
    }
    r.measured = parse_double(row[np]).value_or(NAN);
    r.reference = parse_double(row[np + 1]).value_or(NAN);
    r.ratio = parse_double(row[np + 2]).value_or(NAN);
    r.runtime_ms = static_cast<std::int64_t>(parse_double(row[np + 3]).value_or(0.0));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BoundReport> parse_json(const std::string& text) {
  const auto arr = nlohmann::ordered_json::parse(text);
  std::vector<BoundReport> out;
  auto number = [](const nlohmann::ordered_json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
  };
  for (const auto& obj : arr) {
    BoundReport r;
    for (const auto& [k, v] : obj.items()) {
      if (k == "measured") r.measured = number(v);
      else if (k == "reference") r.reference = number(v);
      else if (k == "ratio") r.ratio = number(v);
      else if (k == "runtime_ms") r.runtime_ms = v.get<std::int64_t>();
      else if (v.is_string()) r.params.emplace_back(k, v.get<std::string>());
      else r.params.emplace_back(k, number(v));
    }
    out.push_back(std::move(r));
  }
  return out;
}

BoundReport normalized(const BoundReport& r) {
  BoundReport out = r;
  for (auto& [k, v] : out.params)
    if (auto* d = std::get_if<double>(&v)) *d = round12(*d);
  out.measured = round12(r.measured);
  out.reference = round12(r.reference);
  out.ratio = round12(r.ratio);
  return out;
}

}  // namespace kforms
