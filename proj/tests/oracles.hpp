#pragma once

// Reference evaluations used only by the tests.  They share no code with the
// library: plain long double sums over a fixed wide index range.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

using cplxl = std::complex<long double>;

inline std::complex<double> theta_sum(std::complex<double> alpha, double eps, int cutoff = 400, double shift = 0.0) {
  cplxl s = 0.0L;
  const cplxl a(alpha.real(), alpha.imag());
  for (int k = -cutoff; k <= cutoff; ++k) {
    const long double n = k + static_cast<long double>(shift);
    s += std::exp(-static_cast<long double>(eps) * n * n + cplxl(0.0L, n) * a);
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

inline std::complex<double> theta_sharp_sum(std::complex<double> alpha, double eps, int cutoff = 400) {
  return theta_sum(alpha, eps, cutoff, 0.5);
}

// Weighted series sum_n w(n)^{-1} exp(-eps n^2 + i n alpha) over |n| <= cutoff.
inline std::complex<double> weighted_sum(std::complex<double> alpha, double eps,
                                         const std::function<std::complex<double>(int)>& w, int cutoff) {
  cplxl s = 0.0L;
  const cplxl a(alpha.real(), alpha.imag());
  for (int n = -cutoff; n <= cutoff; ++n) {
    const std::complex<double> wn = w(n);
    const cplxl term = std::exp(-static_cast<long double>(eps) * n * n + cplxl(0.0L, n) * a);
    s += term / cplxl(wn.real(), wn.imag());
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

// Central difference of f at x with step h (second derivative).
inline double second_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline double first_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
