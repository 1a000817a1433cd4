// thetarep: build the worked examples, run their verification suites and
// write kernel / Kahler / measure grids.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "thetarep/errors.hpp"
#include "thetarep/kernels.hpp"
#include "thetarep/parallel.hpp"
#include "thetarep/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCompute = 3;

struct Options {
  std::string example = "sklyanin";
  std::string params;
  std::string grid;
  std::string tol;
  std::string out;
  std::string format;
  std::string what = "all";
  int threads = 0;
  int M = 0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::map<std::string, double> scenario_params(const Options& o) {
  auto p = thetarep::cli::parse_params(o.params);
  if (o.M > 0) {
    if (p.count("M")) throw thetarep::InputError("M given both in --params and --M");
    p["M"] = o.M;
  }
  return p;
}

int write_to(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << o.out << " for writing\n";
    return kExitUsage;
  }
  f << text;
  return 0;
}

int cmd_verify(const Options& o) {
  if (!o.format.empty() && o.format != "report") throw thetarep::InputError("verify: --format must be report");
  const auto tol = thetarep::cli::parse_tolerances(o.tol);
  const auto scenario = thetarep::build_scenario(o.example, scenario_params(o));
  const auto reports = thetarep::run_verify_suite(scenario, tol);
  std::string text;
  for (const auto& r : reports) text += thetarep::to_json_line(r) + "\n";
  if (const int rc = write_to(o, text)) return rc;
  return thetarep::all_pass(reports) ? kExitPass : kExitFail;
}

int cmd_grid(const Options& o) {
  if (!o.format.empty() && o.format != "csv") throw thetarep::InputError("grid: --format must be csv");
  if (o.what != "all" && o.what != "kernel" && o.what != "kahler" && o.what != "measure") {
    throw thetarep::InputError("grid: --what must be kernel, kahler, measure or all");
  }
  if (!o.tol.empty()) thetarep::cli::parse_tolerances(o.tol);
  const auto scenario = thetarep::build_scenario(o.example, scenario_params(o));
  thetarep::GridSpec grid = scenario.ctx.grid;
  if (!o.grid.empty()) grid = thetarep::cli::parse_grid(o.grid);
  const auto rows = thetarep::evaluate_grid(scenario.ctx, grid);
  const bool k = o.what == "all" || o.what == "kernel";
  const bool w = o.what == "all" || o.what == "kahler";
  const bool m = o.what == "all" || o.what == "measure";
  std::string text = "t,s,u,v";
  if (k) text += ",re_K,im_K";
  if (w) text += ",kahler_density";
  if (m) text += ",measure_density";
  text += "\n";
  for (const auto& r : rows) {
    text += fmt(r.t) + "," + fmt(r.s) + "," + fmt(r.u) + "," + fmt(r.v);
    if (k) text += "," + fmt(r.K.real()) + "," + fmt(r.K.imag());
    if (w) text += "," + fmt(r.kahler);
    if (m) text += "," + fmt(r.measure);
    text += "\n";
  }
  return write_to(o, text);
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const thetarep::InputError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const thetarep::ParameterError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const thetarep::UnsupportedSurfaceError& e) {
    std::cerr << "unsupported surface: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kExitCompute;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representations of commutation relations on cylinders and tori: kernels, Kahler forms, coherent states"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--example", o.example, "sklyanin | su11-v1 | su11-v2")->capture_default_str();
    sub->add_option("--params", o.params, "k=v,... (values accept pi and + - * / ( ))");
    sub->add_option("--grid", o.grid, "nu,nv,umin,umax");
    sub->add_option("--tol", o.tol, "check=value,... tolerance overrides");
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--format", o.format, "report (verify) | csv (grid)");
    sub->add_option("--threads", o.threads, "worker threads (default THETAREP_THREADS or 1)");
    sub->add_option("--M", o.M, "cylinder truncation, n in [-M, M]");
  };
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite, one JSON line per check");
  add_common(verify);
  CLI::App* grid = app.add_subcommand("grid", "write a CSV grid of K, the Kahler density and the measure density");
  add_common(grid);
  grid->add_option("--what", o.what, "kernel | kahler | measure | all")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (o.threads < 0) {
    std::cerr << "usage error: --threads must be positive\n";
    return kExitUsage;
  }
  if (o.threads > 0) thetarep::set_thread_count(o.threads);
  if (verify->parsed()) return guarded([&] { return cmd_verify(o); });
  return guarded([&] { return cmd_grid(o); });
}
