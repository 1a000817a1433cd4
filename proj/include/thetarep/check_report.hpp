#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace thetarep {

using ParamValue = std::variant<double, long, bool, std::string>;

/// One named identity check.  Serialized as a single JSON line with exactly
/// the fields check_name, residual, tolerance, pass, params.
struct CheckReport {
  std::string check_name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, ParamValue>> params;

  CheckReport& with(std::string key, ParamValue value) {
    params.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

/// pass = residual <= tolerance; NaN residuals fail.
CheckReport make_check(std::string name, double residual, double tolerance);

/// Numbers are printed with %.17g; non-finite values become null.
std::string to_json_line(const CheckReport& report);
void write_reports(std::ostream& os, const std::vector<CheckReport>& reports);

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace thetarep
