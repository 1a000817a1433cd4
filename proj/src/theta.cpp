#include "thetarep/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "thetarep/errors.hpp"
#include "thetarep/series_batch.hpp"

namespace thetarep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxCut = 1e7;

void check_args(const ThetaArgs& args) {
  if (!(args.eps > 0.0)) throw DomainError("theta: eps must be positive, got " + std::to_string(args.eps));
  if (!(args.tol > 0.0)) throw DomainError("theta: tol must be positive");
}

// Reduce Re alpha into [-pi, pi); returns the number of 2 pi periods removed.
long reduce_phase(cplx& alpha) {
  const double k = std::floor((alpha.real() + kPi) / (2.0 * kPi));
  alpha -= 2.0 * kPi * k;
  return static_cast<long>(k);
}

// sum over n in offset + Z of exp(-eps n^2 + i n alpha), window centred on
// the peak term, added from both ends inward.
cplx direct_sum(cplx alpha, double eps, double offset, double tol) {
  const double b = alpha.imag();
  const double centre = -b / (2.0 * eps);
  const double width = std::sqrt(-std::log(tol) / eps) + 5.0;
  if (std::abs(centre) + width > kMaxCut) {
    throw ConvergenceError("theta: required cutoff exceeds 1e7 terms (eps = " + std::to_string(eps) + ")");
  }
  const long m_lo = static_cast<long>(std::floor(centre - width - offset));
  const long m_hi = static_cast<long>(std::ceil(centre + width - offset));
  const auto term = [&](long m) {
    const double n = static_cast<double>(m) + offset;
    return std::exp(cplx(-eps * n * n, 0.0) + cplx(0.0, n) * alpha);
  };
  cplx sum = 0.0;
  long lo = m_lo;
  long hi = m_hi;
  while (lo < hi) {
    sum += term(lo++);
    sum += term(hi--);
  }
  if (lo == hi) sum += term(lo);
  return sum;
}

bool use_jacobi(const ThetaArgs& args) {
  switch (args.method) {
    case ThetaMethod::Direct:
      return false;
    case ThetaMethod::Jacobi:
      return true;
    case ThetaMethod::Auto:
      break;
  }
  return args.eps < 1.0;
}

cplx jacobi_prefactor(cplx alpha, double eps) {
  return std::sqrt(kPi / eps) * std::exp(-alpha * alpha / (4.0 * eps));
}

}  // namespace

cplx theta(const ThetaArgs& args) {
  check_args(args);
  cplx alpha = args.alpha;
  reduce_phase(alpha);
  if (!use_jacobi(args)) return direct_sum(alpha, args.eps, 0.0, args.tol);
  const double eps_dual = kPi * kPi / args.eps;
  const cplx alpha_dual = cplx(0.0, kPi / args.eps) * alpha;
  return jacobi_prefactor(alpha, args.eps) * direct_sum(alpha_dual, eps_dual, 0.0, args.tol);
}

cplx theta_sharp(const ThetaArgs& args) {
  check_args(args);
  cplx alpha = args.alpha;
  const long periods = reduce_phase(alpha);
  const double sign = (periods % 2 == 0) ? 1.0 : -1.0;
  if (!use_jacobi(args)) return sign * direct_sum(alpha, args.eps, 0.5, args.tol);
  const double eps_dual = kPi * kPi / args.eps;
  const cplx alpha_dual = cplx(0.0, kPi / args.eps) * alpha + kPi;
  return sign * jacobi_prefactor(alpha, args.eps) * direct_sum(alpha_dual, eps_dual, 0.0, args.tol);
}

cplx theta_mod(const ThetaArgs& args, const WeightSequence& weights) {
  check_args(args);
  if (weights.is_unit()) return theta(args);
  if (args.eps < 0.05) {
    throw ConvergenceError("theta_mod: eps < 0.05 with non-unit weights has no accurate summation route");
  }
  cplx alpha = args.alpha;
  reduce_phase(alpha);
  const double eps = args.eps;
  const double b = alpha.imag();
  const double gauss_window = std::abs(b) / (2.0 * eps) + std::sqrt(-std::log(args.tol) / eps) + 5.0;
  const double log_tol = std::log(args.tol);

  const auto log_term = [&](long n) {
    const double nd = static_cast<double>(n);
    return -weights.log_at(static_cast<int>(n)) + cplx(-eps * nd * nd, 0.0) + cplx(0.0, nd) * alpha;
  };

  // Walk outward from n = 0 in each direction, keeping the log terms.
  std::vector<cplx> negative;
  std::vector<cplx> positive;
  const cplx t0 = log_term(0);
  double peak = t0.real();
  for (int dir : {+1, -1}) {
    auto& side = dir > 0 ? positive : negative;
    double prev = t0.real();
    int rising = 0;
    for (long k = 1;; ++k) {
      if (static_cast<double>(k) > kMaxCut) throw ConvergenceError("theta_mod: cutoff exceeded 1e7 terms");
      const cplx lt = log_term(dir * k);
      const double mod = lt.real();
      side.push_back(lt);
      peak = std::max(peak, mod);
      if (mod > prev && static_cast<double>(k) > gauss_window) {
        if (++rising >= 3) {
          throw ConvergenceError("theta_mod: terms grow over 3 consecutive |n| beyond n = " +
                                 std::to_string(dir * (k - 2)) + "; weights do not give a convergent series");
        }
      } else {
        rising = 0;
      }
      const bool falling = mod < prev;
      prev = mod;
      if (falling && mod < peak + log_tol && static_cast<double>(k) > 1.0) break;
    }
  }
  // Smallest terms first: outermost of each side, alternating inward.
  cplx sum = 0.0;
  std::size_t i = negative.size();
  std::size_t j = positive.size();
  while (i > 0 || j > 0) {
    if (i > 0) sum += std::exp(negative[--i]);
    if (j > 0) sum += std::exp(positive[--j]);
  }
  sum += std::exp(t0);
  return sum;
}

IndexWindow gaussian_window(double x_abs_max, double eps, double tol) {
  if (!(eps > 0.0)) throw DomainError("gaussian_window: eps must be positive");
  const double centre = std::abs(x_abs_max) / (2.0 * eps);
  const double width = std::sqrt(-std::log(tol) / eps) + 5.0;
  if (centre + width > kMaxCut) throw ConvergenceError("gaussian_window: cutoff exceeds 1e7 terms");
  return {static_cast<int>(std::floor(-centre - width)), static_cast<int>(std::ceil(centre + width))};
}

void theta_log_series_batch(std::span<const double> xs, double eps, const WeightSequence* weights,
                            std::span<LogSeries> out) {
  if (!(eps > 0.0)) throw DomainError("theta_log_series: eps must be positive");
  if (out.size() != xs.size()) throw InputError("theta_log_series_batch: output size mismatch");
  if (xs.empty()) return;
  int n_lo = 0;
  std::vector<double> log_w;
  const bool unit = weights == nullptr || weights->is_unit();
  if (unit) {
    double x_abs = 0.0;
    for (double x : xs) x_abs = std::max(x_abs, std::abs(x));
    const IndexWindow win = gaussian_window(x_abs, eps);
    n_lo = win.lo;
    log_w.assign(static_cast<std::size_t>(win.hi - win.lo + 1), 0.0);
  } else {
    n_lo = weights->n_min();
    log_w.resize(static_cast<std::size_t>(weights->n_max() - weights->n_min() + 1));
    for (int n = weights->n_min(); n <= weights->n_max(); ++n) {
      const cplx lw = weights->log_at(n);
      if (std::cos(lw.imag()) <= 0.0 || std::abs(std::sin(lw.imag())) > 1e-9) {
        throw DomainError("theta_log_series: weight at n = " + std::to_string(n) + " is not real positive");
      }
      log_w[static_cast<std::size_t>(n - n_lo)] = -lw.real();
    }
  }
  const std::size_t count = xs.size();
  std::vector<double> log_s(count), mean(count), var(count), tail(count);
  series::evaluate(xs, eps, n_lo, log_w, {log_s.data(), mean.data(), var.data(), tail.data()});
  for (std::size_t p = 0; p < count; ++p) {
    if (!unit && tail[p] > -36.0) {
      throw ConvergenceError("theta_log_series: stored weight range [" + std::to_string(weights->n_min()) + ", " +
                             std::to_string(weights->n_max()) + "] too narrow at x = " + std::to_string(xs[p]));
    }
    out[p] = {log_s[p], mean[p], var[p]};
  }
}

LogSeries theta_log_series(double x, double eps, const WeightSequence* weights) {
  LogSeries r{};
  theta_log_series_batch(std::span<const double>(&x, 1), eps, weights, std::span<LogSeries>(&r, 1));
  return r;
}

double theta_log_d2(double x, double eps, const WeightSequence* weights) {
  return theta_log_series(x, eps, weights).d2;
}

double dual_log_d2(double y, double eps) {
  if (!(eps > 0.0)) throw DomainError("dual_log_d2: eps must be positive");
  const int k_max = static_cast<int>(std::ceil(std::sqrt(-std::log(1e-17) / eps) + 5.0));
  double f = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  for (int k = k_max; k >= 1; --k) {
    const double kd = static_cast<double>(k);
    const double w = 2.0 * std::exp(-eps * kd * kd);
    f += w * std::cos(kd * y);
    f1 -= kd * w * std::sin(kd * y);
    f2 -= kd * kd * w * std::cos(kd * y);
  }
  f += 1.0;
  if (!(f > 0.0)) throw DomainError("dual_log_d2: series is not positive at y = " + std::to_string(y));
  const double r1 = f1 / f;
  return f2 / f - r1 * r1;
}

}  // namespace thetarep
