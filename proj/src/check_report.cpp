#include "thetarep/check_report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace thetarep {

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string value_text(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return number(*d);
  if (const auto* l = std::get_if<long>(&v)) return std::to_string(*l);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return quoted(std::get<std::string>(v));
}

}  // namespace

CheckReport make_check(std::string name, double residual, double tolerance) {
  CheckReport r;
  r.check_name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  return r;
}

std::string to_json_line(const CheckReport& report) {
  std::string out = "{\"check_name\":" + quoted(report.check_name) + ",\"residual\":" + number(report.residual) +
                    ",\"tolerance\":" + number(report.tolerance) + ",\"pass\":" + (report.pass ? "true" : "false") +
                    ",\"params\":{";
  for (std::size_t i = 0; i < report.params.size(); ++i) {
    if (i) out += ",";
    out += quoted(report.params[i].first) + ":" + value_text(report.params[i].second);
  }
  out += "}}";
  return out;
}

void write_reports(std::ostream& os, const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) os << to_json_line(r) << '\n';
}

bool all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace thetarep
