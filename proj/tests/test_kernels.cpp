#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "thetarep/errors.hpp"
#include "thetarep/factorization.hpp"
#include "thetarep/flows.hpp"
#include "thetarep/kernels.hpp"
#include "thetarep/quadrature.hpp"
#include "thetarep/special.hpp"
#include "thetarep/theta.hpp"

using namespace thetarep;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

FactorizationData unit_torus_fact(long N) {
  if (N == 2) {
    const auto h = [](cplx A) { return A.real() / 2.0; };
    const DeformationFlow flow = rotation_flow(kPi, h, 2.0, cplx(1.0, 0.0), 1.0);
    const auto profile = [flow](double t) { return surface_profile(flow, t); };
    return factorization_unit(
        "rotation", profile, [profile](cplx t) { return cplx(std::sqrt(profile(t.real())), 0.0); }, 1.0, 1.0);
  }
  const double phi = 2 * kPi / static_cast<double>(N);
  return factorization_sklyanin(phi, 1.0, 0.0, 2.0, 1.0, N, 0.0);
}

// K(zbar|z) = sum over j = j' mod N of exp(-eps (j^2 + j'^2)/2 + j zbar + j' z), unit weights.
cplx torus_double_sum(long N, double eps, cplx zbar, cplx z, int cut = 60) {
  std::complex<long double> s = 0.0L;
  for (int j = -cut; j <= cut; ++j) {
    for (int jp = -cut; jp <= cut; ++jp) {
      if (((j - jp) % N + N) % N != 0) continue;
      const cplx e = -0.5 * eps * (double(j) * j + double(jp) * jp) + double(j) * zbar + double(jp) * z;
      const cplx v = std::exp(e);
      s += std::complex<long double>(v.real(), v.imag());
    }
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

// Grid of points z = u + i v over one cell of the torus.
template <class F>
double worst_over_grid(const KernelContext& ctx, int n, F&& f) {
  double worst = 0.0;
  const double L = ctx.eps() * static_cast<double>(ctx.N);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const cplx z(L * (a + 0.5) / n, 2 * kPi * b / n);
      const cplx w(L * (n - a - 0.3) / n, 2 * kPi * (b + 0.37) / n);
      worst = std::max(worst, f(std::conj(w), z));
    }
  }
  return worst;
}
}  // namespace

TEST(Kernels, TorusClosedFormAgainstDoubleSum) {
  for (long N : {2L, 3L, 4L, 5L, 8L}) {
    const KernelContext ctx = make_torus_context(unit_torus_fact(N), N);
    const double worst = worst_over_grid(ctx, 16, [&](cplx zbar, cplx z) {
      const cplx ref = torus_double_sum(N, ctx.eps(), zbar, z);
      return std::abs(kernel_torus_closed_form(ctx, zbar, z) - ref) / std::abs(ref);
    });
    EXPECT_LT(worst, 1e-10) << "N = " << N;
  }
}

TEST(Kernels, TorusRoutesAgreeOn64Grid) {
  for (long N : {2L, 3L, 4L, 5L, 8L}) {
    const KernelContext ctx = make_torus_context(unit_torus_fact(N), N);
    const double worst = worst_over_grid(ctx, 64, [&](cplx zbar, cplx z) {
      const cplx basis = kernel_torus(ctx, zbar, z);
      const double scale = std::abs(basis);
      return std::max(std::abs(kernel_torus_fourier(ctx, zbar, z) - basis),
                      std::abs(kernel_torus_closed_form(ctx, zbar, z) - basis)) /
             scale;
    });
    EXPECT_LT(worst, 1e-10) << "N = " << N;
  }
}

TEST(Kernels, SwappedParityAssignmentFails) {
  // Single product for odd N, two-term form for even N: not the kernel.
  for (long N : {3L, 4L, 5L}) {
    const KernelContext ctx = make_torus_context(unit_torus_fact(N), N);
    const double eps = ctx.eps();
    const double Nd = static_cast<double>(N);
    const double worst = worst_over_grid(ctx, 8, [&](cplx zbar, cplx z) {
      const cplx x = zbar + z, y = zbar - z;
      cplx swapped;
      if (N % 2 == 1) {
        swapped = theta(-kI * x, eps) * theta(-kI * Nd * y / 2.0, eps * Nd * Nd / 4.0);
      } else {
        swapped = theta(-kI * x, eps) * theta(-kI * Nd * y, eps * Nd * Nd) +
                  theta_sharp(-kI * x, eps) * theta_sharp(-kI * Nd * y, eps * Nd * Nd);
      }
      const cplx ref = torus_double_sum(N, eps, zbar, z);
      return std::abs(swapped - ref) / std::abs(ref);
    });
    EXPECT_GT(worst, 1e-6) << "N = " << N;
  }
}

TEST(Kernels, DifferenceSystem) {
  for (long N : {3L, 4L, 5L}) {
    const KernelContext ctx = make_torus_context(unit_torus_fact(N), N);
    const auto reports = kernel_torus_difference_system_check(ctx, 16, 16, 1e-9);
    EXPECT_EQ(reports.size(), 5u);
    for (const auto& r : reports) EXPECT_TRUE(r.pass) << N << " " << r.check_name << " " << r.residual;
  }
}

TEST(Kernels, CylinderUnitKernelIsTheta) {
  const KernelContext ctx = make_cylinder_context(factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 40);
  for (cplx z : {cplx(0.3, 1.0), cplx(-1.2, 4.0), cplx(2.0, -0.5)}) {
    const cplx zbar = std::conj(z);
    const cplx ref = oracle::theta_sum((zbar + z) / kI, ctx.eps());
    EXPECT_LT(std::abs(kernel_cylinder(ctx, zbar, z) - ref) / std::abs(ref), 1e-13);
    double sum = 0.0;
    for (const cplx& e : basis_values(ctx, zbar)) sum += std::norm(e);
    EXPECT_LT(std::abs(sum - ref.real()) / ref.real(), 1e-10);
  }
}

TEST(Kernels, CylinderGammaKernelIsBasisSum) {
  const KernelContext ctx = make_cylinder_context(factorization_su11_v2(1.25, 0.0, 1.0, 1.0), 40);
  for (cplx z : {cplx(0.3, 1.0), cplx(-2.0, 2.0), cplx(3.0, 0.1)}) {
    const cplx zbar = std::conj(z);
    double sum = 0.0;
    for (const cplx& e : basis_values(ctx, zbar)) sum += std::norm(e);
    const cplx k = kernel_cylinder(ctx, zbar, z);
    EXPECT_LT(std::abs(k - sum) / sum, 1e-10) << z;
    EXPECT_NEAR(k.imag(), 0.0, 1e-12 * sum);
  }
}

TEST(Kernels, QFunctionUnitWeights) {
  const KernelContext ctx = make_cylinder_context(factorization_su11_v1(1.25, 0.0, 1.0, 0.7), 16);
  const double eps = ctx.eps();
  for (double x : {-2.0, 0.0, 0.45, 3.3}) {
    EXPECT_NEAR(q_function(ctx, x), theta(kPi * x / eps, kPi * kPi / eps).real(), 1e-10);
    EXPECT_NEAR(q_function(ctx, x + 2.0 * eps), q_function(ctx, x), 1e-12);
    EXPECT_EQ(p_function(ctx, x), 1.0);
  }
}

TEST(Kernels, PFunctionGammaWeights) {
  const KernelContext ctx = make_cylinder_context(factorization_su11_v2(1.25, 0.0, 1.0, 1.0), 16);
  // Direct quadrature of the Gamma-ratio integral (hbar = tau = 1, a = 0, lambda = 1).
  const cplx c(0.5, 1.0), cc(0.5, -1.0);
  const double g2 = std::exp(2.0 * special::log_gamma(c).real());
  const auto ref = [&](double x) {
    const auto integrand = [&](double t) {
      const cplx s = x / 2.0 + cplx(0.0, t);
      return (std::exp(-t * t - special::log_gamma(c + s) - special::log_gamma(cc + s))).real();
    };
    return g2 / std::sqrt(kPi) * quad::integrate_gk(integrand, -9.0, 9.0, 1e-15, 1e-13);
  };
  for (double x : {-6.0, -1.5, 0.0, 2.0, 7.0}) {
    const double r = ref(x);
    EXPECT_NEAR(p_function(ctx, x), r, 1e-8 * std::max(1.0, std::abs(r))) << x;
  }
}

TEST(Kernels, KahlerDensityUnitWeights) {
  const KernelContext ctx = make_cylinder_context(factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 16);
  const double eps = ctx.eps();
  for (double t : {-0.4, 0.0, 0.25, 1.3}) {
    const double x = 2.0 * ctx.tau * t;
    const double direct = 2.0 * eps * theta_log_series(x, eps).d2;
    EXPECT_NEAR(kahler_density(ctx, t), direct, 1e-12) << t;
  }
  // Exponentially close to 1 for small hbar.
  const KernelContext small = make_cylinder_context(factorization_su11_v1(1.25, 0.0, 0.125, 1.0), 16);
  for (double t : {0.0, 0.03, 0.07}) EXPECT_LT(std::abs(kahler_density(small, t) - 1.0), 1e-30);
}

TEST(Kernels, CoordinatesRoundTrip) {
  const KernelContext ctx = make_cylinder_context(factorization_su11_v2(1.25, 0.0, 1.0, 1.0), 16);
  for (double t : {-5.0, -0.3, 0.0, 2.2, 9.0}) EXPECT_NEAR(t_from_u(ctx, u_from_t(ctx, t)), t, 1e-12);
}

TEST(Kernels, QuantizationIntegral) {
  for (long N : {4L, 5L}) {
    const KernelContext ctx = make_torus_context(unit_torus_fact(N), N);
    EXPECT_NEAR(quantization_integral(ctx, 128, 128), static_cast<double>(N), 1e-6) << N;
  }
}

TEST(Kernels, TorusDensityPositive) {
  const KernelContext ctx = make_torus_context(unit_torus_fact(4), 4);
  for (double t : {0.1, 1.7, 3.2}) {
    for (int k = 0; k < 64; ++k) EXPECT_GT(kahler_density_torus(ctx, t, 2 * kPi * k / 64.0), 0.0);
  }
}

TEST(Kernels, NormQuadrature) {
  for (long N : {3L, 4L}) {
    const KernelContext ctx = make_torus_context(unit_torus_fact(N), N);
    for (int n = 0; n < N; ++n) {
      std::vector<cplx> psi(static_cast<std::size_t>(N), 0.0);
      psi[static_cast<std::size_t>(n)] = 1.0;
      EXPECT_NEAR(norm_quadrature(ctx, psi), 1.0, 1e-8) << N << " " << n;
    }
    std::vector<cplx> mix(static_cast<std::size_t>(N));
    double norm = 0.0;
    for (int n = 0; n < N; ++n) {
      mix[static_cast<std::size_t>(n)] = cplx(0.3 * n - 0.5, 0.2 + 0.1 * n);
      norm += std::norm(mix[static_cast<std::size_t>(n)]);
    }
    EXPECT_NEAR(norm_quadrature(ctx, mix), norm, 1e-8 * norm);
    EXPECT_EQ(norm_quadrature(ctx, std::vector<cplx>(static_cast<std::size_t>(N), 0.0)), 0.0);
  }
  const KernelContext cyl = make_cylinder_context(factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 16);
  for (int n : {-3, 0, 2}) {
    std::vector<cplx> psi(33, 0.0);
    psi[static_cast<std::size_t>(n + 16)] = 1.0;
    EXPECT_NEAR(norm_quadrature(cyl, psi), 1.0, 1e-8) << n;
  }
}

TEST(Kernels, GridDiagonalPositive) {
  const KernelContext ctx = make_torus_context(unit_torus_fact(4), 4);
  const auto rows = evaluate_grid(ctx, GridSpec{0.0, 4.0, 64, 64, 1});
  EXPECT_EQ(rows.size(), 64u * 64u);
  for (const auto& r : rows) {
    EXPECT_GT(r.K.real(), 0.0);
    EXPECT_NEAR(r.K.imag(), 0.0, 1e-12 * r.K.real());
    EXPECT_GT(r.measure, 0.0);
  }
}

TEST(Kernels, ContextValidation) {
  // Unnormalized Gamma weights cannot carry a torus.
  EXPECT_THROW(make_torus_context(factorization_su11_v2(1.25, 0.0, 1.0, 1.0), 4), InputError);
  EXPECT_THROW(make_torus_context(unit_torus_fact(4), 0), ParameterError);
  const KernelContext cyl = make_cylinder_context(factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 16);
  EXPECT_THROW(kernel_torus_closed_form(cyl, 0.0, 0.0), InputError);
}
