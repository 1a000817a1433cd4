#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "thetarep/series_batch.hpp"

namespace sb = thetarep::series;

namespace {

struct Result {
  std::vector<double> log_s, mean, var, tail;
  explicit Result(std::size_t n) : log_s(n), mean(n), var(n), tail(n) {}
  sb::BatchOut out() { return {log_s.data(), mean.data(), var.data(), tail.data()}; }
};

void run_case(std::size_t count, double eps, int n_lo, std::size_t len, bool weighted) {
  std::mt19937_64 rng(7 + count);
  std::uniform_real_distribution<double> ux(-40.0, 40.0), uw(-3.0, 3.0);
  std::vector<double> x(count), log_w(len);
  for (auto& v : x) v = ux(rng);
  for (auto& v : log_w) v = weighted ? uw(rng) : 0.0;
  Result s(count), v(count);
  sb::evaluate(x, eps, n_lo, log_w, s.out(), sb::Backend::Scalar);
  sb::evaluate(x, eps, n_lo, log_w, v.out(), sb::Backend::Avx2);
  for (std::size_t i = 0; i < count; ++i) {
    EXPECT_NEAR(s.log_s[i], v.log_s[i], 1e-12 * std::max(1.0, std::abs(s.log_s[i]))) << i;
    EXPECT_NEAR(s.mean[i], v.mean[i], 1e-11 * std::max(1.0, std::abs(s.mean[i]))) << i;
    EXPECT_NEAR(s.var[i], v.var[i], 1e-10 * std::max(1.0, s.var[i])) << i;
    EXPECT_NEAR(s.tail[i], v.tail[i], 1e-9 * std::max(1.0, std::abs(s.tail[i]))) << i;
  }
}

}  // namespace

TEST(SeriesBatch, ScalarMatchesClosedSum) {
  // Small window, checked against a naive sum.
  const std::vector<double> x = {-1.0, 0.0, 0.5, 2.0};
  const std::vector<double> log_w(41, 0.0);
  Result r(x.size());
  sb::evaluate(x, 0.8, -20, log_w, r.out(), sb::Backend::Scalar);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = 0.0, m = 0.0, m2 = 0.0;
    for (int n = -20; n <= 20; ++n) {
      const double t = std::exp(-0.8 * n * n + n * x[i]);
      s += t;
      m += n * t;
      m2 += double(n) * n * t;
    }
    EXPECT_NEAR(r.log_s[i], std::log(s), 1e-14);
    EXPECT_NEAR(r.mean[i], m / s, 1e-14);
    EXPECT_NEAR(r.var[i], m2 / s - (m / s) * (m / s), 1e-13);
  }
}

TEST(SeriesBatch, Avx2MatchesScalar) {
  if (!sb::avx2_available()) GTEST_SKIP() << "AVX2 backend not available on this machine";
  for (std::size_t count : {1u, 3u, 4u, 7u, 64u, 1001u}) run_case(count, 0.25, -200, 401, false);
  run_case(257, 1.0, -60, 121, true);
  run_case(33, 0.05, -600, 1201, false);
}

TEST(SeriesBatch, AutoResolvesToAvailableBackend) {
  if (sb::avx2_available()) {
    EXPECT_EQ(sb::resolved_backend(), sb::Backend::Avx2);
  } else {
    EXPECT_EQ(sb::resolved_backend(), sb::Backend::Scalar);
  }
}
