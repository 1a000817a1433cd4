#pragma once

#include <complex>
#include <vector>

#include "thetarep/check_report.hpp"
#include "thetarep/factorization.hpp"
#include "thetarep/representations.hpp"
#include "thetarep/weights.hpp"

namespace thetarep {

/// Integration / output grid over u = Re zbar and v.  orientation_sign fixes
/// dzbar dz = orientation_sign * 2 du dv; +1 makes the classical
/// quantization integral come out as +N.
struct GridSpec {
  double u_min = 0.0;
  double u_max = 0.0;
  int n_u = 64;
  int n_v = 64;
  int orientation_sign = 1;
};

/// Everything needed to evaluate K, q, p, the measures and the Kahler density.
/// Cylinder: basis e^(n), n in [-M, M].  Torus: e^(n), n = 0..N-1, built on the
/// m-sheet covering u in [0, tau hbar N).
struct KernelContext {
  Geometry geometry = Geometry::Cylinder;
  long N = 0;
  long m = 1;
  int M = 16;
  FactorizationData fact;
  double hbar = 1.0;
  double tau = 1.0;
  WeightSequence weights;  // |nu_!(n hbar)|^2
  GridSpec grid;

  double eps() const { return tau * hbar; }
  int basis_lo() const { return geometry == Geometry::Torus ? 0 : -M; }
  int basis_size() const { return geometry == Geometry::Torus ? static_cast<int>(N) : 2 * M + 1; }
};

KernelContext make_cylinder_context(const FactorizationData& fact, int M = 16);
/// InputError if fact is not normalized for (N, alpha) (|nu_!(N hbar)| != 1).
KernelContext make_torus_context(const FactorizationData& fact, long N, long m = 1);

/// K_nu(zbar | z) = sum_n |nu_!(n hbar)|^{-2} exp(-eps n^2 + n (zbar + z)).
cplx kernel_cylinder(const KernelContext& ctx, cplx zbar, cplx z);

/// K^N_nu(zbar | z) = sum_{n<N} e^(n)(zbar) conj(e^(n)(conj z)) from the
/// quasiperiodic basis.
cplx kernel_torus(const KernelContext& ctx, cplx zbar, cplx z);
/// Same kernel through the quantum Fourier basis
/// (1/N) sum_n theta_nu(zbar/i + 2 pi n/N, eps/2) conj(theta_nu(conj(z)/i + 2 pi n/N, eps/2)).
cplx kernel_torus_fourier(const KernelContext& ctx, cplx zbar, cplx z);
/// Closed product form for nu = 1, with x = zbar + z, y = zbar - z:
///   N even: theta(x/i, eps) theta(N y/(2i), eps N^2/4)
///   N odd:  theta(x/i, eps) theta(N y/i, eps N^2) + theta#(x/i, eps) theta#(N y/i, eps N^2)
/// InputError for non-unit weights.
cplx kernel_torus_closed_form(const KernelContext& ctx, cplx zbar, cplx z);

/// Kernel of the context's geometry.
cplx kernel(const KernelContext& ctx, cplx zbar, cplx z);

/// e^(n)(zbar) for n = basis_lo() .. basis_lo() + basis_size() - 1.
std::vector<cplx> basis_values(const KernelContext& ctx, cplx zbar);
/// d/dzbar e^(n)(zbar), same indexing.
std::vector<cplx> basis_derivatives(const KernelContext& ctx, cplx zbar);

/// Raw coefficients a_j of the monomials e^{j zbar}, j in [j_lo, j_hi], of
/// the function with orthonormal-basis coefficients psi.
struct MonomialExpansion {
  int j_lo = 0;
  std::vector<cplx> a;
};
MonomialExpansion monomial_expansion(const KernelContext& ctx, const std::vector<cplx>& psi, double u_lo, double u_hi);
cplx evaluate_expansion(const MonomialExpansion& f, cplx zbar);

/// Residuals of the shift equation, 2 pi i periodicity, N-quasiperiodicity,
/// the 2 pi i / N exchange symmetry and the double-average normalization,
/// evaluated on an n_u x n_v grid of (zbar, w) pairs.
std::vector<CheckReport> kernel_torus_difference_system_check(const KernelContext& ctx, int n_u, int n_v, double tol);

/// q_nu(x) = sqrt(eps/pi) exp(-x^2 / (4 eps)) K_nu(x), via log K.
double q_function(const KernelContext& ctx, double x);
/// Torus version on the diagonal, as a function of zbar.
double q_function_torus(const KernelContext& ctx, cplx zbar);

/// p_nu(x) = pi^{-1/2} sum_i w_i R((x + 2 i sqrt(hbar tau) y_i) / (2 tau)),
/// R(s) = nu_!(s) conj(nu_!(conj s)), Gauss-Hermite nodes doubled from 32
/// until the change is below 1e-9 (relative).  ConvergenceError past 2048 nodes.
double p_function(const KernelContext& ctx, double x);

/// u = tau t + Re g(t) and its inverse (Newton; tau + Re g' > 0).
double u_from_t(const KernelContext& ctx, double t);
double t_from_u(const KernelContext& ctx, double u);

/// Density of the quantum Kahler form in (t, s): 2 hbar (tau + Re g'(t)) (ln K)''(x(t)).
double kahler_density(const KernelContext& ctx, double t);
/// density - 1 for unit weights, computed on the dual side of the Jacobi
/// identity so the exponentially small value keeps full relative accuracy.
double kahler_deviation(const KernelContext& ctx, double t);
/// Torus: 2 hbar (tau + Re g'(t)) d_zbar d_z ln K^N at zbar = tau t + g(t) + i s.
double kahler_density_torus(const KernelContext& ctx, double t, double s);

/// (1/(2 pi hbar)) integral of the Kahler density over t in [0, N hbar), s in [0, 2 pi).
double quantization_integral(const KernelContext& ctx, int n_t, int n_s);

/// Product quadrature on (u, v) carrying the reproducing-measure weight
///   W(u) = (1/(2 pi hbar)) q p / (tau K) du dv = p(2u) exp(-u^2/eps) / (2 pi sqrt(pi eps)) du dv,
/// so that sum_k W_k |psi(zbar_k)|^2 approximates the norm squared.
struct MeasureGrid {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> weight_u;  // per u node, includes du dv and the 2 from dzbar dz
  double window_tail = 0.0;      // relative size of the integrand at the u-window edges
};
/// Cylinder: u window chosen so the Gaussian tails of basis indices up to
/// |n| <= n_max fall below 1e-13 of the peak (enlarged adaptively).
/// Torus: u in [0, eps N) (periodic integrand).
MeasureGrid measure_grid(const KernelContext& ctx, int n_max, int n_u_min, int n_v_min);

/// Squared norm of the function with basis coefficients psi (indexed like
/// basis_values) from the integral form of the norm.
double norm_quadrature(const KernelContext& ctx, const std::vector<cplx>& psi, int n_u_min = 64, int n_v_min = 64);

/// Grid output row for the CLI.
struct GridRow {
  double t, s, u, v;
  cplx K;
  double kahler;
  double measure;  // q p / tau, density of dm per du dv
};
std::vector<GridRow> evaluate_grid(const KernelContext& ctx, const GridSpec& grid);

}  // namespace thetarep
