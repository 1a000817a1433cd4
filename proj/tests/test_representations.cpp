#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "thetarep/errors.hpp"
#include "thetarep/factorization.hpp"
#include "thetarep/flows.hpp"
#include "thetarep/representations.hpp"
#include "thetarep/scenario.hpp"

using namespace thetarep;
using Eigen::MatrixXcd;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Representation sklyanin_rep(long N, double alpha) {
  const double phi = 2 * kPi / static_cast<double>(N);
  return build_torus_rep(sklyanin_flow(phi, 1.0, 0.0, 2.0), factorization_sklyanin(phi, 1.0, 0.0, 2.0, 1.0, N, alpha),
                         N, alpha);
}
}  // namespace

TEST(Representations, Su11DiagonalOfBC) {
  const DeformationFlow flow = su11_flow(1.25, 0.0, 1.0);
  const Representation rep = build_cylinder_rep(flow, factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 16);
  const MatrixXcd BC = rep.B * rep.C;
  for (int n = rep.check_lo(); n <= rep.check_hi(); ++n) {
    const int i = rep.index(n);
    EXPECT_NEAR(BC(i, i).real(), n * n - n + 1.25, 1e-12 * (1.0 + n * n)) << n;
    EXPECT_NEAR(BC(i, i).imag(), 0.0, 1e-12 * (1.0 + n * n));
  }
  EXPECT_NEAR(BC(rep.index(1), rep.index(1)).real(), 1.25, 1e-14);
}

TEST(Representations, RelationsHold) {
  for (const auto& make : {+[] { return factorization_su11_v1(1.25, 0.0, 1.0, 1.0); },
                           +[] { return factorization_su11_v2(1.25, 0.0, 1.0, 1.0); }}) {
    const Representation rep = build_cylinder_rep(su11_flow(1.25, 0.0, 1.0), make(), 64);
    for (const auto& c : verify_relations(rep, 1e-12)) EXPECT_TRUE(c.pass) << c.check_name << " " << c.residual;
  }
  for (long N : {3L, 4L, 5L, 8L}) {
    const Representation rep = sklyanin_rep(N, 0.0);
    for (const auto& c : verify_relations(rep, 1e-11)) EXPECT_TRUE(c.pass) << N << c.check_name << " " << c.residual;
    const auto orig = verify_sklyanin_original(rep, 1e-11);
    EXPECT_GE(orig.size(), 6u);
    for (const auto& c : orig) EXPECT_TRUE(c.pass) << N << c.check_name << " " << c.residual;
  }
}

TEST(Representations, SklyaninPowerIdentity) {
  for (double alpha : {0.0, 0.6}) {
    const Representation rep = sklyanin_rep(4, alpha);
    MatrixXcd P = MatrixXcd::Identity(4, 4);
    for (int i = 0; i < 4; ++i) P = P * rep.B;
    double log_F = 0.0;
    for (int k = 1; k <= 4; ++k) log_F += std::log(rep.fact.profile(k));
    const cplx target = std::exp(0.5 * log_F) * std::exp(cplx(0.0, alpha));
    EXPECT_LT(max_abs(P - target * MatrixXcd::Identity(4, 4)) / std::abs(target), 1e-10);
    EXPECT_LT(power_identity_residual(rep), 1e-10);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(rep.A[0](i, i)), 1.0, 1e-14);
  }
}

TEST(Representations, CasimirsAreScalar) {
  for (const auto& c : casimir_scalars(sklyanin_rep(5, 0.2))) EXPECT_LT(c.deviation, 1e-11) << c.name;
  const Representation cyl =
      build_cylinder_rep(su11_flow(1.25, 0.0, 1.0), factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 32);
  // BC - (A - hbar/2)^2 = lambda^2 on the interior.
  const MatrixXcd A = cyl.A[0];
  const MatrixXcd X = cyl.B * cyl.C - (A - 0.5 * MatrixXcd::Identity(cyl.dim, cyl.dim)) *
                                         (A - 0.5 * MatrixXcd::Identity(cyl.dim, cyl.dim));
  for (int n = cyl.check_lo(); n <= cyl.check_hi(); ++n) {
    EXPECT_NEAR(std::abs(X(cyl.index(n), cyl.index(n)) - 1.0), 0.0, 1e-11 * (1.0 + n * n)) << n;
  }
}

TEST(Representations, FiducialAndShift) {
  const Representation rep = sklyanin_rep(4, 0.0);
  const Eigen::VectorXcd p0 = fiducial_state(rep);
  EXPECT_NEAR(p0.norm(), 1.0, 1e-15);
  const Eigen::VectorXcd bc = rep.B * (rep.C * p0);
  EXPECT_LT((bc - 2.0 * p0).norm(), 1e-12);
  const MatrixXcd S = pure_shift(rep);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double expect = (i == (j + 1) % 4) ? 1.0 : 0.0;
      EXPECT_NEAR(std::abs(S(i, j)), expect, 1e-13) << i << j;
    }
  }
  const Representation cyl =
      build_cylinder_rep(su11_flow(1.25, 0.0, 1.0), factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 16);
  const MatrixXcd Sc = pure_shift(cyl);
  for (int i = 0; i + 1 < cyl.dim; ++i) EXPECT_LT(std::abs(Sc(i + 1, i) - 1.0), 1e-13);
}

TEST(Representations, MonomialConstructionAgrees) {
  const DeformationFlow flow = su11_flow(1.25, 0.0, 1.0);
  for (const auto& fact : {factorization_su11_v1(1.25, 0.0, 1.0, 1.0), factorization_su11_v2(1.25, 0.0, 1.0, 1.0)}) {
    const int M = 16;
    const Representation rep = build_cylinder_rep(flow, fact, M);
    const MonomialOperators mono = monomial_operators(flow, fact, M);
    const Eigen::VectorXcd D = orthonormal_scaling(fact, M);
    const MatrixXcd Dm = D.asDiagonal();
    const MatrixXcd Dinv = D.cwiseInverse().asDiagonal();
    const MatrixXcd B = Dinv * mono.B * Dm;
    const MatrixXcd C = Dinv * mono.C * Dm;
    const MatrixXcd A = Dinv * mono.A * Dm;
    EXPECT_LT(max_abs(B - rep.B) / max_abs(rep.B), 1e-13) << fact.name;
    EXPECT_LT(max_abs(C - rep.C) / max_abs(rep.C), 1e-13) << fact.name;
    EXPECT_LT(max_abs(A - rep.A[0]) / max_abs(rep.A[0]), 1e-13) << fact.name;
  }
}

TEST(Representations, IndependentOfComplexStructure) {
  const DeformationFlow flow = su11_flow(1.25, 0.0, 1.0);
  const Representation r1 = build_cylinder_rep(flow, factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 16);
  const Representation r2 = build_cylinder_rep(flow, factorization_su11_v1(1.25, 0.0, 1.0, 2.5), 16);
  EXPECT_LT(max_abs(r1.B - r2.B), 1e-14);
  EXPECT_LT(max_abs(r1.C - r2.C), 1e-14);
}

TEST(Representations, InvalidInputs) {
  const DeformationFlow flow = su11_flow(1.25, 0.0, 1.0);
  EXPECT_THROW(build_cylinder_rep(flow, factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 4), ParameterError);
  // phi = pi/2 has minimal period 4; N = 8 is not minimal.
  EXPECT_THROW(build_torus_rep(sklyanin_flow(kPi / 2, 1.0, 0.0, 2.0),
                               factorization_sklyanin(kPi / 2, 1.0, 0.0, 2.0, 1.0, 8, 0.0), 8, 0.0),
               ParameterError);
  // Unnormalized factorization (cycle product not matching alpha).
  EXPECT_THROW(build_torus_rep(sklyanin_flow(kPi / 2, 1.0, 0.0, 2.0),
                               factorization_sklyanin(kPi / 2, 1.0, 0.0, 2.0, 1.0, 4, 0.0), 4, 1.0),
               ParameterError);
  const Representation cyl = build_cylinder_rep(flow, factorization_su11_v1(1.25, 0.0, 1.0, 1.0), 16);
  EXPECT_THROW(verify_sklyanin_original(cyl, 1e-12), InputError);
}

TEST(Representations, TwoDimensionalTorus) {
  // phi = pi is outside the Sklyanin range; a half-turn rotation flow gives period 2.
  const auto h = [](cplx A) { return A.real() / 2.0; };
  const DeformationFlow flow = rotation_flow(kPi, h, 2.0, cplx(1.0, 0.0), 1.0);
  const auto profile = [flow](double t) { return surface_profile(flow, t); };
  for (double t = -2.0; t <= 2.0; t += 0.25) EXPECT_GE(profile(t), 1.0 - 1e-14);
  const FactorizationData fact = normalize_resonant(
      factorization_unit("rotation", profile, [profile](cplx t) { return cplx(std::sqrt(profile(t.real())), 0.0); },
                         1.0, 1.0),
      2, 0.0);
  const Representation rep = build_torus_rep(flow, fact, 2, 0.0);
  EXPECT_EQ(rep.dim, 2);
  for (const auto& c : verify_relations(rep, 1e-12)) EXPECT_TRUE(c.pass) << c.check_name << " " << c.residual;
  EXPECT_LT(power_identity_residual(rep), 1e-12);
}
