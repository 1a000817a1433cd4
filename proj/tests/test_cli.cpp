#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "cli_config.hpp"
#include "thetarep/errors.hpp"

using namespace thetarep;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(THETAREP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("thetarep_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(CliConfig, Expressions) {
  EXPECT_DOUBLE_EQ(cli::eval_expression("pi/2"), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(cli::eval_expression("2*pi/5"), 2 * std::numbers::pi / 5);
  EXPECT_DOUBLE_EQ(cli::eval_expression("-(1.5+0.25)*2"), -3.5);
  EXPECT_DOUBLE_EQ(cli::eval_expression("1e-3"), 1e-3);
  EXPECT_THROW(cli::eval_expression("pi*"), InputError);
  EXPECT_THROW(cli::eval_expression("sqrt(2)"), InputError);
  EXPECT_THROW(cli::eval_expression(""), InputError);
}

TEST(CliConfig, Params) {
  const auto p = cli::parse_params("phi=pi/2,kappa1=1, a0=2");
  EXPECT_EQ(p.size(), 3u);
  EXPECT_DOUBLE_EQ(p.at("a0"), 2.0);
  EXPECT_THROW(cli::parse_params("phi"), InputError);
  EXPECT_THROW(cli::parse_params("phi=1,phi=2"), InputError);
  EXPECT_THROW(cli::parse_params("=3"), InputError);
  EXPECT_THROW(cli::parse_params("a=1,,b=2"), InputError);
}

TEST(CliConfig, TolerancesAndGrid) {
  EXPECT_DOUBLE_EQ(cli::parse_tolerances("partition_of_unity=1e-7").at("partition_of_unity"), 1e-7);
  EXPECT_THROW(cli::parse_tolerances("x=0"), InputError);
  EXPECT_THROW(cli::parse_tolerances("x=-1"), InputError);
  const GridSpec g = cli::parse_grid("64,80,-1,2");
  EXPECT_EQ(g.n_u, 64);
  EXPECT_EQ(g.n_v, 80);
  EXPECT_DOUBLE_EQ(g.u_min, -1.0);
  EXPECT_THROW(cli::parse_grid("32,64,0,1"), InputError);
  EXPECT_THROW(cli::parse_grid("64,64,1,0"), InputError);
  EXPECT_THROW(cli::parse_grid("64,64,1"), InputError);
}

TEST(CliProcess, ExitCodes) {
  EXPECT_EQ(run("verify --example sklyanin --params phi=pi/2,kappa1=1,psi=0,a0=2,alpha=0"), 0);
  EXPECT_EQ(run("verify --example sklyanin --params phi=pi/2,kappa1"), 2);
  EXPECT_EQ(run("verify --example sklyanin --params bogus=1"), 2);
  EXPECT_EQ(run("verify --example nosuch"), 2);
  EXPECT_EQ(run("verify --example sklyanin --params phi=pi"), 2);
  EXPECT_EQ(run("verify --example sklyanin --tol partition_of_unity=1e-300"), 1);
}

TEST(CliProcess, ReportLines) {
  const auto out = temp_file("report.jsonl");
  ASSERT_EQ(run("verify --example sklyanin --out " + out.string()), 0);
  const std::string text = slurp(out);
  std::filesystem::remove(out);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  EXPECT_GE(lines, 12u);
  EXPECT_NE(text.find("\"check_name\""), std::string::npos);
  EXPECT_NE(text.find("\"pass\":true"), std::string::npos);
  EXPECT_EQ(text.find("\"pass\":false"), std::string::npos);
}

TEST(CliProcess, GridIsDeterministicAcrossThreads) {
  const auto a = temp_file("grid1.csv");
  const auto b = temp_file("grid4.csv");
  const std::string common = "grid --example su11-v2 --what all --grid 64,64,-2,2 --format csv --out ";
  ASSERT_EQ(run(common + a.string() + " --threads 1"), 0);
  ASSERT_EQ(run(common + b.string() + " --threads 4"), 0);
  const std::string sa = slurp(a), sb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(sa.rfind("t,s,u,v,re_K,im_K,kahler_density,measure_density\n", 0), 0u);
}
