#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "thetarep/errors.hpp"

namespace thetarep::quad {

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK tables).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class F, class T>
T integrate_gk_impl(const F& f, double a, double b, double abs_tol, double rel_tol, int depth,
                    int max_depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T pair = f(centre - dx) + f(centre + dx);
    kronrod += pair * kKronrodWeights[j];
    if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  const double err = magnitude(kronrod - gauss);
  if (err <= std::max(abs_tol, rel_tol * magnitude(kronrod)) || half < 1e-13 * (1.0 + std::abs(centre))) {
    return kronrod;
  }
  if (depth >= max_depth) {
    throw ConvergenceError("adaptive Gauss-Kronrod quadrature exceeded its subdivision budget");
  }
  return integrate_gk_impl<F, T>(f, a, centre, 0.5 * abs_tol, rel_tol, depth + 1, max_depth) +
         integrate_gk_impl<F, T>(f, centre, b, 0.5 * abs_tol, rel_tol, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].  Works for
/// any value type with +, scalar * and std::abs (double, std::complex<double>).
template <class F>
auto integrate_gk(const F& f, double a, double b, double abs_tol = 1e-13, double rel_tol = 1e-13,
                  int max_depth = 40) {
  using T = std::decay_t<decltype(f(a))>;
  if (a == b) return T{};
  return detail::integrate_gk_impl<F, T>(f, a, b, abs_tol, rel_tol, 0, max_depth);
}

/// Nodes and weights of the n-point Gauss-Hermite rule for weight exp(-y^2).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on the orthonormal Hermite recurrence; cached per n.
const HermiteRule& gauss_hermite(int n);

}  // namespace thetarep::quad
