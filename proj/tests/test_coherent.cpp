#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thetarep/coherent.hpp"
#include "thetarep/errors.hpp"
#include "thetarep/factorization.hpp"
#include "thetarep/flows.hpp"
#include "thetarep/kernels.hpp"
#include "thetarep/representations.hpp"

using namespace thetarep;
using Eigen::MatrixXcd;

namespace {
constexpr double kPi = std::numbers::pi;

struct Torus {
  Representation rep;
  KernelContext ctx;
};

Torus sklyanin_torus(long N) {
  const double phi = 2 * kPi / static_cast<double>(N);
  const FactorizationData f = factorization_sklyanin(phi, 1.0, 0.0, 2.0, 1.0, N, 0.0);
  return {build_torus_rep(sklyanin_flow(phi, 1.0, 0.0, 2.0), f, N, 0.0), make_torus_context(f, N)};
}

struct Cylinder {
  Representation rep;
  KernelContext ctx;
};

Cylinder su11_cylinder(bool gamma_weights, int M = 24) {
  const FactorizationData f = gamma_weights ? factorization_su11_v2(1.25, 0.0, 1.0, 1.0)
                                            : factorization_su11_v1(1.25, 0.0, 1.0, 1.0);
  return {build_cylinder_rep(su11_flow(1.25, 0.0, 1.0), f, M), make_cylinder_context(f, M)};
}

std::vector<cplx> random_points(const KernelContext& ctx, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  const double lo = ctx.geometry == Geometry::Torus ? 0.0 : -2.0;
  const double hi = ctx.geometry == Geometry::Torus ? ctx.eps() * static_cast<double>(ctx.N) : 2.0;
  std::uniform_real_distribution<double> u(lo, hi), v(0.0, 2 * kPi);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) out.emplace_back(u(rng), v(rng));
  return out;
}
}  // namespace

TEST(Coherent, NormIsKernel) {
  const Torus t = sklyanin_torus(4);
  for (const cplx& z : random_points(t.ctx, 100, 3)) {
    const CoherentState s = coherent_state(t.rep, t.ctx, z);
    const double k = kernel(t.ctx, std::conj(z), z).real();
    EXPECT_LT(std::abs(s.coefficients.squaredNorm() - k) / k, 1e-9) << z;
  }
  const Cylinder c = su11_cylinder(true);
  for (const cplx& z : random_points(c.ctx, 100, 4)) {
    const CoherentState s = coherent_state(c.rep, c.ctx, z);
    const double k = kernel(c.ctx, std::conj(z), z).real();
    EXPECT_LT(std::abs(s.coefficients.squaredNorm() - k) / k, 1e-9) << z;
  }
}

TEST(Coherent, ShiftRouteAgrees) {
  const Torus t = sklyanin_torus(5);
  for (const cplx& z : random_points(t.ctx, 20, 5)) {
    const CoherentState a = coherent_state(t.rep, t.ctx, z);
    const CoherentState b = coherent_state_via_shift(t.rep, t.ctx, z);
    EXPECT_LT((a.coefficients - b.coefficients).norm() / a.coefficients.norm(), 1e-10);
  }
  const Cylinder c = su11_cylinder(false);
  for (const cplx& z : random_points(c.ctx, 20, 6)) {
    const CoherentState a = coherent_state(c.rep, c.ctx, z);
    const CoherentState b = coherent_state_via_shift(c.rep, c.ctx, z);
    EXPECT_LT((a.coefficients - b.coefficients).norm() / a.coefficients.norm(), 1e-10);
  }
}

TEST(Coherent, OverlapIsTwoPointKernel) {
  const Torus t = sklyanin_torus(4);
  const auto pts = random_points(t.ctx, 20, 7);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const cplx w = pts[i], z = pts[i + 1];
    const cplx ov = coherent_overlap(coherent_state(t.rep, t.ctx, w), coherent_state(t.rep, t.ctx, z));
    const cplx k = kernel(t.ctx, std::conj(z), w);
    EXPECT_LT(std::abs(ov - k) / std::abs(k), 1e-9);
    EXPECT_LT(std::abs(std::conj(ov) - kernel(t.ctx, std::conj(w), z)) / std::abs(k), 1e-9);
  }
}

TEST(Coherent, NearOriginFavoursFiducial) {
  const Cylinder c = su11_cylinder(false);
  const CoherentState s = coherent_state(c.rep, c.ctx, cplx(-0.05, 0.3));
  const Eigen::VectorXcd p0 = fiducial_state(c.rep);
  // Near u = 0 the n = 0 coefficient carries the largest weight.
  Eigen::Index arg = 0;
  s.coefficients.cwiseAbs().maxCoeff(&arg);
  EXPECT_EQ(arg, c.rep.index(0));
  EXPECT_NEAR(std::abs(p0(c.rep.index(0))), 1.0, 1e-15);
}

TEST(Coherent, PartitionOfUnityTorus) {
  for (long N : {3L, 4L, 5L, 8L}) {
    const Torus t = sklyanin_torus(N);
    const PartitionResult r = partition_of_unity(t.rep, t.ctx, 128, 128, 0, 1e-6);
    EXPECT_TRUE(r.report.pass) << N << " " << r.report.residual;
    EXPECT_EQ(r.integral.rows(), N);
    // Diagonal entries are the quadrature norms of the basis vectors.
    for (int n = 0; n < N; ++n) {
      std::vector<cplx> psi(static_cast<std::size_t>(N), 0.0);
      psi[static_cast<std::size_t>(n)] = 1.0;
      EXPECT_NEAR(r.integral(n, n).real(), norm_quadrature(t.ctx, psi, 128, 128), 1e-9);
    }
  }
}

TEST(Coherent, PartitionOfUnityCylinderWindow) {
  const Cylinder c = su11_cylinder(false);
  const PartitionResult r = partition_of_unity(c.rep, c.ctx, 128, 128, 4, 1e-5);
  EXPECT_TRUE(r.report.pass) << r.report.residual;
  EXPECT_LT(r.window_tail, 1e-10);
}

TEST(Coherent, TransformRoundTripAndUnitarity) {
  const Torus t = sklyanin_torus(4);
  for (const auto& c : transform_checks(t.rep, t.ctx, 128, 128, 0, 1e-6)) {
    EXPECT_TRUE(c.pass) << c.check_name << " " << c.residual;
  }
  const Cylinder cy = su11_cylinder(true);
  for (const auto& c : transform_checks(cy.rep, cy.ctx, 128, 128, 4, 1e-5)) {
    EXPECT_TRUE(c.pass) << c.check_name << " " << c.residual;
  }
}

TEST(Coherent, TransformIsLinear) {
  const Torus t = sklyanin_torus(4);
  MatrixXcd psi(4, 3);
  psi.col(0) << 1.0, 0.0, cplx(0.0, 1.0), 0.5;
  psi.col(1) << 0.0, 2.0, 0.0, cplx(-1.0, 0.3);
  psi.col(2) = cplx(0.7, -0.2) * psi.col(0) + 1.5 * psi.col(1);
  const TransformResult r = coherent_transform(t.rep, t.ctx, psi, 128, 128, 0);
  const Eigen::VectorXcd combo = cplx(0.7, -0.2) * r.values.col(0) + 1.5 * r.values.col(1);
  EXPECT_LT((r.values.col(2) - combo).norm(), 1e-12);
  EXPECT_LT((r.values - psi).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Coherent, InverseMapOfFiducialIsUnit) {
  const Cylinder c = su11_cylinder(true);
  const Eigen::VectorXcd p0 = fiducial_state(c.rep);
  for (const cplx& z : random_points(c.ctx, 10, 9)) {
    EXPECT_LT(std::abs(inverse_map(c.ctx, p0, std::conj(z)) - 1.0), 1e-14);
  }
  // (P, P_z) through the coherent coefficients.
  const Torus t = sklyanin_torus(4);
  Eigen::VectorXcd p(4);
  p << 0.2, cplx(0.0, 1.0), -0.4, 1.1;
  for (const cplx& z : random_points(t.ctx, 10, 10)) {
    const CoherentState s = coherent_state(t.rep, t.ctx, z);
    EXPECT_LT(std::abs(inverse_map(t.ctx, p, std::conj(z)) - s.coefficients.dot(p)), 1e-10);
  }
}

TEST(Coherent, IntertwiningTorus) {
  const Torus t = sklyanin_torus(4);
  for (Generator g : {Generator::Identity, Generator::A, Generator::B, Generator::C}) {
    const CheckReport r = intertwining_check(t.rep, t.ctx, g, 0, 128, 128, 0, 1e-6);
    EXPECT_TRUE(r.pass) << to_string(g) << " " << r.residual;
  }
}

TEST(Coherent, IntertwiningCylinder) {
  const Cylinder c = su11_cylinder(false);
  for (Generator g : {Generator::A, Generator::B, Generator::C}) {
    const CheckReport r = intertwining_check(c.rep, c.ctx, g, 0, 128, 128, 4, 1e-5);
    EXPECT_TRUE(r.pass) << to_string(g) << " " << r.residual;
  }
}

TEST(Coherent, DoubleCopyEmbedding) {
  const Torus t = sklyanin_torus(4);
  EXPECT_TRUE(embedding_check(t.rep, t.ctx, 128, 128, 0, 1e-6).pass);
}

TEST(Coherent, MismatchedInputs) {
  const Torus t4 = sklyanin_torus(4);
  const Torus t5 = sklyanin_torus(5);
  EXPECT_THROW(coherent_state(t4.rep, t5.ctx, cplx(0.1, 0.1)), InputError);
  EXPECT_THROW(inverse_map(t4.ctx, Eigen::VectorXcd::Zero(3), 0.0), InputError);
}
