#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "thetarep/flows.hpp"
#include "thetarep/weights.hpp"

namespace thetarep {

/// Complex-structure data of a leaf: mu with |mu|^2 = F, the factor pair
/// B C = F, nu = mu / B, g with exp((1/hbar) int_{t-hbar}^t g) = nu, the
/// generalized factorial nu_!, and tau.  Immutable after construction.
struct FactorizationData {
  std::string name;
  double hbar = 1.0;
  std::function<double(double)> profile;  // F(t)
  ComplexFn mu;
  ComplexFn factor_B;
  ComplexFn factor_C;
  ComplexFn nu;
  ComplexFn nu_log_derivative;  // nu'/nu
  ComplexFn g;                  // empty when unknown
  ComplexFn g_prime;            // empty: numeric derivative of g
  bool nu_is_unit = false;
  WeightSequence nu_factorial;
  double tau = 1.0;
  std::optional<double> tau0;
  std::optional<double> alpha;
  std::optional<long> period_N;  // set once normalized for a torus T = N hbar

  /// Re g'(t), from g_prime or a central difference with step hbar/100.
  double re_g_prime(double t) const;
};

struct SklyaninMu {
  ComplexFn mu;
  cplx zeta;
  cplx xi;
};

/// mu(t) = t + a - hbar/2 - i lambda.
ComplexFn mu_su11(double a0, double a, double hbar);

/// Solves zeta xi = e^{-i phi} / (2 sin phi), |zeta|^2 + |xi|^2 = S with
/// S = a0/kappa1 + cos(psi - phi)/sin(phi), taking zeta real positive on the
/// larger root, and returns mu(t) = zeta a e^{i phi t} - conj(xi a) e^{-i phi t}.
SklyaninMu mu_sklyanin(double phi, double kappa1, double psi, double a0);

/// mu built from explicit (zeta, xi) for the Sklyanin leaf.
ComplexFn sklyanin_mu_from(double phi, double kappa1, double psi, cplx zeta, cplx xi);

enum class AsymptoticSide { PlusInfinity, MinusInfinity };

/// nu(t) ~ |t|^b e^{p t + l} on the chosen side.
struct GAsymptotics {
  double b = 0.0;
  double p = 0.0;
  double l = 0.0;
  AsymptoticSide side = AsymptoticSide::PlusInfinity;
};

/// One-sided series solution of the g-equation.  Partial sums are taken at
/// K = K0 2^j and Richardson-extrapolated in 1/K; summation stops when the
/// extrapolated value settles to 1e-14 (or the terms themselves drop below
/// 1e-14).  ConvergenceError once K would exceed 1e6.
ComplexFn solve_g_series(ComplexFn nu_log_derivative, const GAsymptotics& asym, double hbar);

/// Fourth-order central difference of log nu, for callers with no closed form.
ComplexFn numeric_log_derivative(ComplexFn nu);

/// Lattice nu_!(n hbar), n in [n_min, n_max].  DomainError naming k if nu(k hbar) = 0.
WeightSequence nu_factorial_lattice(ComplexFn nu, int n_min, int n_max, double hbar);

/// nu_!(t) = exp((1/hbar) int_0^t g) along the straight segment from 0 to t.
cplx nu_factorial_continuous(const ComplexFn& g, cplx t, double hbar);

/// tau0 = -min Re g'(t) over the scan grid (central difference, step hbar/100).
double tau_min(const ComplexFn& g, const ScanSpec& scan, double hbar);

/// Rescales B -> c B, C -> C / c so that |nu_!(N hbar)| = 1 and
/// sum_{n=1}^N arg B(n hbar) = alpha (mod 2 pi).
FactorizationData normalize_resonant(const FactorizationData& fact, long N, double alpha);

/// Residuals of the construction invariants on a t grid.
struct FactorizationResiduals {
  double mu_modulus;     // max |(|mu|^2 - F)| / F
  double factor_product; // max |B C - F| / F
  double recurrence;     // max |nu_!(n+1) - nu((n+1) hbar) nu_!(n)| / |nu_!(n+1)|
};
FactorizationResiduals check_factorization(const FactorizationData& fact, double t_min, double t_max, int samples);

/// Example builders.  lattice_half_width fixes the stored nu_! range.
FactorizationData factorization_unit(std::string name, std::function<double(double)> profile, ComplexFn mu,
                                     double hbar, double tau, int lattice_half_width = 256);
FactorizationData factorization_su11_v1(double a0, double a, double hbar, double tau, int lattice_half_width = 256);
FactorizationData factorization_su11_v2(double a0, double a, double hbar, double tau, int lattice_half_width = 256);

/// Sklyanin leaf with B = mu (nu = 1), normalized for T = N with phase alpha
/// through the (zeta, xi) rephasing.
FactorizationData factorization_sklyanin(double phi, double kappa1, double psi, double a0, double tau, long N,
                                         double alpha);

}  // namespace thetarep
