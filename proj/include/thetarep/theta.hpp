#pragma once

#include <complex>
#include <span>

#include "thetarep/weights.hpp"

namespace thetarep {

enum class ThetaMethod { Auto, Direct, Jacobi };

/// Arguments of theta(alpha, eps) = sum_n exp(-eps n^2 + i n alpha).
/// tol bounds the discarded tail relative to the largest term.
struct ThetaArgs {
  cplx alpha;
  double eps = 1.0;
  double tol = 1e-17;
  ThetaMethod method = ThetaMethod::Auto;
};

/// Auto uses direct summation for eps >= 1 and the Jacobi dual otherwise.
cplx theta(const ThetaArgs& args);
inline cplx theta(cplx alpha, double eps, ThetaMethod method = ThetaMethod::Auto) {
  return theta(ThetaArgs{alpha, eps, 1e-17, method});
}

/// Same series over n in 1/2 + Z.  Antiperiodic in alpha with period 2 pi.
cplx theta_sharp(const ThetaArgs& args);
inline cplx theta_sharp(cplx alpha, double eps, ThetaMethod method = ThetaMethod::Auto) {
  return theta_sharp(ThetaArgs{alpha, eps, 1e-17, method});
}

/// sum_n rho_!(n hbar)^{-1} exp(-eps n^2 + i n alpha).  The cutoff is grown
/// until the terms fall below tol times the largest one; growth of the term
/// modulus over 3 consecutive |n| past the Gaussian window is treated as
/// divergence.  Non-unit weights with eps < 0.05 are refused.
cplx theta_mod(const ThetaArgs& args, const WeightSequence& weights);

/// Derivatives of ln S(x), S(x) = sum_n w_n exp(-eps n^2 + n x) for real x,
/// with w_n = 1 (weights == nullptr) or w_n = 1/weights(n), weights real
/// and positive on the lattice.
struct LogSeries {
  double log_s;
  double d1;
  double d2;
};
LogSeries theta_log_series(double x, double eps, const WeightSequence* weights = nullptr);

/// Batched form over many x; uses the SIMD series kernel when available.
void theta_log_series_batch(std::span<const double> xs, double eps, const WeightSequence* weights,
                            std::span<LogSeries> out);

/// d^2/dx^2 ln S(x), computed as the variance of n under the term weights.
double theta_log_d2(double x, double eps, const WeightSequence* weights = nullptr);

/// (ln f)''(y) for the real series f(y) = sum_k exp(-eps k^2) cos(k y).
/// This is the oscillatory side of the Jacobi pair; for unit weights
/// theta_log_d2(x, eps) = 1/(2 eps) + (pi/eps)^2 dual_log_d2(pi x/eps, pi^2/eps).
double dual_log_d2(double y, double eps);

/// Index window [lo, hi] outside of which exp(-eps n^2 + n x) is below
/// tol times the peak, for |x| <= x_abs_max.
struct IndexWindow {
  int lo;
  int hi;
};
IndexWindow gaussian_window(double x_abs_max, double eps, double tol = 1e-17);

}  // namespace thetarep
