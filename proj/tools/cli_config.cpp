#include "cli_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <vector>

#include "thetarep/errors.hpp"

namespace thetarep::cli {

namespace {

// expr   := term (('+' | '-') term)*
// term   := factor (('*' | '/') factor)*
// factor := ('+' | '-') factor | number | 'pi' | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  double run() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("bad expression '" + s_ + "': " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        const double d = factor();
        if (d == 0.0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  double factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    skip();
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return std::numbers::pi;
    }
    const char* begin = s_.c_str() + pos_;
    if (pos_ >= s_.size() || !(std::isdigit(static_cast<unsigned char>(*begin)) || *begin == '.')) {
      fail("expected a number");
    }
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::map<std::string, double> parse_pairs(const std::string& text, const char* what) {
  std::map<std::string, double> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError(std::string(what) + ": expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    if (key.empty()) throw InputError(std::string(what) + ": empty key in '" + item + "'");
    if (out.count(key)) throw InputError(std::string(what) + ": key '" + key + "' given twice");
    out[key] = eval_expression(item.substr(eq + 1));
  }
  return out;
}

}  // namespace

double eval_expression(const std::string& text) {
  if (trim(text).empty()) throw InputError("empty expression");
  return Parser(text).run();
}

std::map<std::string, double> parse_params(const std::string& text) { return parse_pairs(text, "--params"); }

std::map<std::string, double> parse_tolerances(const std::string& text) {
  auto out = parse_pairs(text, "--tol");
  for (const auto& [k, v] : out) {
    if (!(v > 0.0)) throw InputError("--tol: tolerance for '" + k + "' must be positive");
  }
  return out;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw InputError("--grid: expected nu,nv,umin,umax");
  GridSpec g;
  const double nu = eval_expression(parts[0]);
  const double nv = eval_expression(parts[1]);
  if (nu != std::floor(nu) || nv != std::floor(nv)) throw InputError("--grid: nu and nv must be integers");
  g.n_u = static_cast<int>(nu);
  g.n_v = static_cast<int>(nv);
  g.u_min = eval_expression(parts[2]);
  g.u_max = eval_expression(parts[3]);
  if (g.n_u < 64 || g.n_v < 64) throw InputError("--grid: nu and nv must be at least 64");
  if (!(g.u_max > g.u_min)) throw InputError("--grid: need umax > umin");
  return g;
}

}  // namespace thetarep::cli
