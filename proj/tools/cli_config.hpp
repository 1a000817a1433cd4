#pragma once

#include <map>
#include <optional>
#include <string>

#include "thetarep/kernels.hpp"

namespace thetarep::cli {

/// Evaluates a parameter expression: numbers, the constant pi, + - * / and
/// parentheses.  InputError on anything else.
double eval_expression(const std::string& text);

/// "k=v,k=v" with expression values.  InputError on malformed pairs or
/// repeated keys.
std::map<std::string, double> parse_params(const std::string& text);

/// "check=value,..." with positive values.
std::map<std::string, double> parse_tolerances(const std::string& text);

/// "nu,nv,umin,umax": n_u, n_v >= 64 and u_max > u_min.
GridSpec parse_grid(const std::string& text);

}  // namespace thetarep::cli
