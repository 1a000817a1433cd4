#pragma once

#include <complex>

namespace thetarep::special {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// log Gamma(z) for complex z away from the poles.  The imaginary part is
/// not reduced to the principal branch; exp() of the result is what callers
/// use.  Reflection for Re z < 1/2, upward shift to Re z >= 15, then the
/// Stirling series through B_20.
cplx log_gamma(cplx z);

/// Digamma psi(z) = d/dz log Gamma(z).
cplx digamma(cplx z);

/// Trigamma psi'(z).
cplx trigamma(cplx z);

}  // namespace thetarep::special
