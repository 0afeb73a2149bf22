#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "circw/error.hpp"
#include "circw/harness.hpp"

namespace circw {

namespace {

constexpr const char* kHeader =
    "sweep_name,sweep_value,estimator,parameter,mse,log10_mse,replications,failures";

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0')
    throw InvalidArgument("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || s[0] == '-')
    throw InvalidArgument("csv line " + std::to_string(line) + ": bad count '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const MseTable& table) {
  out << kHeader << '\n';
  for (const auto& r : table.rows) {
    out << r.sweep_name << ',' << real(r.sweep_value) << ',' << r.estimator << ','
        << r.parameter << ',' << real(r.mse) << ',' << real(r.log10_mse) << ','
        << r.replications << ',' << r.failures << '\n';
  }
}

MseTable parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw InvalidArgument("csv: unexpected header");
  MseTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8)
      throw InvalidArgument("csv line " + std::to_string(lineno) + ": expected 8 fields");
    MseRow r;
    r.sweep_name = f[0];
    r.sweep_value = parse_real(f[1], lineno);
    r.estimator = f[2];
    r.parameter = f[3];
    r.mse = parse_real(f[4], lineno);
    r.log10_mse = parse_real(f[5], lineno);
    r.replications = parse_count(f[6], lineno);
    r.failures = parse_count(f[7], lineno);
    table.rows.push_back(std::move(r));
  }
  return table;
}

void write_wide_csv(std::ostream& out, const MseTable& table) {
  if (table.rows.empty()) return;
  std::vector<std::string> columns;
  std::vector<double> sweep_values;
  for (const auto& r : table.rows) {
    const std::string col = r.estimator + "_" + r.parameter;
    if (std::find(columns.begin(), columns.end(), col) == columns.end())
      columns.push_back(col);
    if (std::find(sweep_values.begin(), sweep_values.end(), r.sweep_value) ==
        sweep_values.end())
      sweep_values.push_back(r.sweep_value);
  }
  out << table.rows.front().sweep_name;
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (double v : sweep_values) {
    out << real(v);
    for (const auto& c : columns) {
      out << ',';
      for (const auto& r : table.rows) {
        if (r.sweep_value == v && r.estimator + "_" + r.parameter == c) {
          out << real(r.log10_mse);
          break;
        }
      }
    }
    out << '\n';
  }
}

}  // namespace circw
