#include "thetarep/representations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thetarep/errors.hpp"

namespace thetarep {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double wrap_angle(double x) {
  constexpr double kPi = std::numbers::pi;
  return x - 2.0 * kPi * std::floor((x + kPi) / (2.0 * kPi));
}

// Largest absolute entry over the checked block [lo, hi] of the indices.
double block_max(const Representation& rep, const MatrixXcd& m) {
  const int lo = rep.index(rep.check_lo());
  const int len = rep.check_hi() - rep.check_lo() + 1;
  return m.block(lo, lo, len, len).cwiseAbs().maxCoeff();
}

double relative_residual(const Representation& rep, const MatrixXcd& diff, std::initializer_list<const MatrixXcd*> terms) {
  double scale = 1.0;
  for (const MatrixXcd* t : terms) scale = std::max(scale, block_max(rep, *t));
  return block_max(rep, diff) / scale;
}

FlowPoint diagonal_point(const Representation& rep, const MatrixXcd& bc, int i) {
  FlowPoint p;
  p.a0 = bc(i, i).real();
  for (const auto& Aj : rep.A) p.a.push_back(Aj(i, i));
  return p;
}

void fill_common(Representation& rep, const DeformationFlow& flow, const FactorizationData& fact) {
  rep.hbar = flow.hbar;
  rep.tau = fact.tau;
  rep.fact = fact;
  rep.flow = flow;
  rep.A.assign(static_cast<std::size_t>(flow.k), MatrixXcd::Zero(rep.dim, rep.dim));
  for (int i = 0; i < rep.dim; ++i) {
    const double t = (rep.n_lo + i) * flow.hbar;
    const FlowPoint p = flow.at(t);
    for (int j = 0; j < flow.k; ++j) rep.A[j](i, i) = p.a[j];
  }
  rep.C = rep.B.adjoint();
}

CheckReport tagged(CheckReport r, const Representation& rep) {
  r.with("geometry", std::string(rep.geometry == Geometry::Torus ? "torus" : "cylinder"))
      .with("example", rep.fact.name)
      .with("residual_kind", std::string("max-abs difference / max(1, max-abs of terms)"));
  if (rep.geometry == Geometry::Torus) {
    r.with("N", rep.N).with("alpha", rep.alpha);
  } else {
    r.with("M", static_cast<long>(rep.M))
        .with("checked_range", std::to_string(rep.check_lo()) + ".." + std::to_string(rep.check_hi()))
        .with("excluded_boundary_band", static_cast<long>(rep.margin));
  }
  return r;
}

}  // namespace

Representation build_cylinder_rep(const DeformationFlow& flow, const FactorizationData& fact, int M) {
  if (M < 8) throw ParameterError("build_cylinder_rep: truncation M must be at least 8, got " + std::to_string(M));
  if (fact.tau0 && !(fact.tau > *fact.tau0)) {
    throw ParameterError("build_cylinder_rep: tau = " + std::to_string(fact.tau) + " must exceed tau0 = " +
                         std::to_string(*fact.tau0));
  }
  Representation rep;
  rep.geometry = Geometry::Cylinder;
  rep.M = M;
  rep.n_lo = -M;
  rep.dim = 2 * M + 1;
  rep.margin = 2;
  rep.shift_up.resize(static_cast<std::size_t>(rep.dim));
  rep.shift_down.resize(static_cast<std::size_t>(rep.dim));
  rep.B = MatrixXcd::Zero(rep.dim, rep.dim);
  for (int i = 0; i < rep.dim; ++i) {
    const int n = rep.n_lo + i;
    rep.shift_up[i] = fact.mu(cplx((n + 1) * flow.hbar, 0.0));
    rep.shift_down[i] = std::conj(fact.mu(cplx(n * flow.hbar, 0.0)));
    if (i + 1 < rep.dim) rep.B(i + 1, i) = rep.shift_up[i];
  }
  fill_common(rep, flow, fact);
  return rep;
}

Representation build_torus_rep(const DeformationFlow& flow, const FactorizationData& fact, long N, double alpha) {
  if (N < 2) throw ParameterError("build_torus_rep: N must be at least 2");
  double scale = 1.0 + std::abs(flow.base.a0);
  for (const cplx& v : flow.base.a) scale += std::abs(v);
  if (return_distance(flow, static_cast<double>(N) * flow.hbar) > 1e-10 * scale) {
    throw ParameterError("build_torus_rep: Phi_{N hbar} is not the identity for N = " + std::to_string(N));
  }
  for (long n2 = 1; n2 < N; ++n2) {
    if (return_distance(flow, static_cast<double>(n2) * flow.hbar) <= 1e-10 * scale) {
      throw ParameterError("build_torus_rep: N = " + std::to_string(N) + " is not minimal, Phi_{N' hbar} = id for N' = " +
                           std::to_string(n2));
    }
  }
  const cplx log_nu_N = fact.nu_factorial.log_at(static_cast<int>(N));
  double arg_sum = 0.0;
  for (long n = 1; n <= N; ++n) arg_sum += std::arg(fact.factor_B(cplx(n * flow.hbar, 0.0)));
  if (std::abs(log_nu_N.real()) > 1e-10 || std::abs(wrap_angle(arg_sum - alpha)) > 1e-10) {
    throw ParameterError("build_torus_rep: factorization is not normalized for (N, alpha); |nu_!(N hbar)| = " +
                         std::to_string(std::exp(log_nu_N.real())) +
                         ", sum arg B - alpha = " + std::to_string(wrap_angle(arg_sum - alpha)));
  }
  Representation rep;
  rep.geometry = Geometry::Torus;
  rep.N = N;
  rep.alpha = alpha;
  rep.n_lo = 0;
  rep.dim = static_cast<int>(N);
  rep.margin = 0;
  rep.shift_up.resize(static_cast<std::size_t>(N));
  rep.shift_down.resize(static_cast<std::size_t>(N));
  rep.B = MatrixXcd::Zero(rep.dim, rep.dim);
  for (int n = 0; n < rep.dim; ++n) {
    cplx w = fact.mu(cplx((n + 1) * flow.hbar, 0.0));
    if (n + 1 == rep.dim) w /= std::exp(log_nu_N);
    rep.shift_up[n] = w;
    rep.B((n + 1) % rep.dim, n) = w;
  }
  for (int n = 0; n < rep.dim; ++n) rep.shift_down[n] = std::conj(rep.shift_up[(n + rep.dim - 1) % rep.dim]);
  fill_common(rep, flow, fact);
  return rep;
}

std::vector<CheckReport> verify_relations(const Representation& rep, double tol) {
  std::vector<CheckReport> out;
  const MatrixXcd BC = rep.B * rep.C;
  const MatrixXcd CB = rep.C * rep.B;
  const int d = rep.dim;
  const int k = static_cast<int>(rep.A.size());
  VectorXcd phi0(d);
  std::vector<VectorXcd> phi(static_cast<std::size_t>(k), VectorXcd(d));
  for (int i = 0; i < d; ++i) {
    const FlowPoint p = rep.flow.apply(rep.hbar, diagonal_point(rep, BC, i));
    phi0(i) = p.a0;
    for (int j = 0; j < k; ++j) phi[j](i) = p.a[j];
  }
  {
    const MatrixXcd rhs = phi0.asDiagonal().toDenseMatrix();
    out.push_back(tagged(make_check("relation CB = phi0_hbar(BC, A)", relative_residual(rep, CB - rhs, {&CB, &rhs}), tol), rep));
  }
  for (int j = 0; j < k; ++j) {
    const std::string sfx = k > 1 ? "_" + std::to_string(j + 1) : "";
    const MatrixXcd D = phi[j].asDiagonal().toDenseMatrix();
    const MatrixXcd lhs1 = rep.C * rep.A[j];
    const MatrixXcd rhs1 = D * rep.C;
    out.push_back(tagged(make_check("relation CA" + sfx + " = phi_hbar(BC, A)" + sfx + " C",
                                    relative_residual(rep, lhs1 - rhs1, {&lhs1, &rhs1}), tol),
                         rep));
    const MatrixXcd lhs2 = rep.A[j] * rep.B;
    const MatrixXcd rhs2 = rep.B * D;
    out.push_back(tagged(make_check("relation A" + sfx + "B = B phi_hbar(BC, A)" + sfx,
                                    relative_residual(rep, lhs2 - rhs2, {&lhs2, &rhs2}), tol),
                         rep));
  }
  {
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
      for (int l = j + 1; l < k; ++l) {
        const MatrixXcd ab = rep.A[j] * rep.A[l];
        const MatrixXcd ba = rep.A[l] * rep.A[j];
        worst = std::max(worst, relative_residual(rep, ab - ba, {&ab, &ba}));
      }
    }
    out.push_back(tagged(make_check("relation [A_j, A_l] = 0", worst, tol), rep).with("k", static_cast<long>(k)));
  }
  {
    const MatrixXcd Bs = rep.B.adjoint();
    out.push_back(tagged(make_check("relation B* = C", relative_residual(rep, Bs - rep.C, {&Bs, &rep.C}), tol), rep));
  }
  for (int j = 0; j < k; ++j) {
    const std::string sfx = k > 1 ? "_" + std::to_string(j + 1) : "";
    const MatrixXcd As = rep.A[j].adjoint();
    const bool hermitian = rep.flow.kinds.empty() || rep.flow.kinds[j] == ComponentKind::Hermitian;
    if (hermitian) {
      out.push_back(tagged(make_check("relation A" + sfx + "* = A" + sfx,
                                      relative_residual(rep, As - rep.A[j], {&As, &rep.A[j]}), tol),
                           rep));
    } else {
      const MatrixXcd l = rep.A[j] * As;
      const MatrixXcd r = As * rep.A[j];
      out.push_back(tagged(make_check("relation [A" + sfx + ", A" + sfx + "*] = 0", relative_residual(rep, l - r, {&l, &r}), tol),
                           rep));
    }
  }
  return out;
}

std::vector<CheckReport> verify_sklyanin_original(const Representation& rep, double tol) {
  if (rep.flow.name != "sklyanin" || !rep.flow.params.count("phi")) {
    throw InputError("verify_sklyanin_original: representation is not built on a Sklyanin flow");
  }
  const double phi = rep.flow.params.at("phi");
  const double r = std::tan(phi / 2.0);
  const cplx I(0.0, 1.0);
  const cplx q = std::exp(I * phi);
  const MatrixXcd& A = rep.A[0];
  const MatrixXcd As = A.adjoint();
  const MatrixXcd& B = rep.B;
  const MatrixXcd& C = rep.C;
  const MatrixXcd S1 = (B + C) / 2.0;
  const MatrixXcd S2 = (C - B) / (2.0 * I);
  const MatrixXcd S3 = (A + As) / (2.0 * std::sqrt(r));
  const MatrixXcd S0 = std::sqrt(r) * (A - As) / (2.0 * I);
  const auto comm = [](const MatrixXcd& x, const MatrixXcd& y) -> MatrixXcd { return x * y - y * x; };
  const auto anti = [](const MatrixXcd& x, const MatrixXcd& y) -> MatrixXcd { return x * y + y * x; };
  std::vector<CheckReport> out;
  const auto add = [&](const std::string& name, const MatrixXcd& lhs, const MatrixXcd& rhs) {
    out.push_back(tagged(make_check(name, relative_residual(rep, lhs - rhs, {&lhs, &rhs}), tol), rep).with("r", r));
  };
  const double r2 = r * r;
  add("sklyanin [S1, S2] = i{S0, S3}", comm(S1, S2), I * anti(S0, S3));
  add("sklyanin [S2, S3] = i{S0, S1}", comm(S2, S3), I * anti(S0, S1));
  add("sklyanin [S3, S1] = i{S0, S2}", comm(S3, S1), I * anti(S0, S2));
  add("sklyanin [S0, S1] = -i r^2 {S2, S3}", comm(S0, S1), -I * r2 * anti(S2, S3));
  add("sklyanin [S0, S2] = i r^2 {S3, S1}", comm(S0, S2), I * r2 * anti(S3, S1));
  add("sklyanin [S0, S3] = 0", comm(S0, S3), MatrixXcd::Zero(rep.dim, rep.dim));
  add("sklyanin [C, B] = -i(A^2 - A*^2)", comm(C, B), -I * (A * A - As * As));
  add("sklyanin [A, A*] = 0", comm(A, As), MatrixXcd::Zero(rep.dim, rep.dim));
  add("sklyanin CA = qAC", C * A, q * A * C);
  add("sklyanin AB = qBA", A * B, q * B * A);
  add("sklyanin B* = C", B.adjoint(), C);
  return out;
}

std::vector<CasimirValue> casimir_scalars(const Representation& rep) {
  std::vector<CasimirValue> out;
  const MatrixXcd BC = rep.B * rep.C;
  for (const auto& cas : rep.flow.casimirs) {
    std::vector<cplx> vals;
    for (int n = rep.check_lo(); n <= rep.check_hi(); ++n) {
      const FlowPoint p = diagonal_point(rep, BC, rep.index(n));
      vals.push_back(cas.eval(p.a0, p.a));
    }
    cplx mean = 0.0;
    for (const cplx& v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double dev = 0.0;
    for (const cplx& v : vals) dev = std::max(dev, std::abs(v - mean));
    out.push_back({cas.name, mean, dev});
  }
  if (rep.geometry == Geometry::Torus) {
    const auto scalar_power = [&](const MatrixXcd& X, const std::string& name) {
      MatrixXcd P = MatrixXcd::Identity(rep.dim, rep.dim);
      for (long i = 0; i < rep.N; ++i) P = P * X;
      const cplx s = P.trace() / static_cast<double>(rep.dim);
      const double dev = (P - s * MatrixXcd::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff();
      out.push_back({name, s, dev});
    };
    scalar_power(rep.B, "B^N");
    for (std::size_t j = 0; j < rep.A.size(); ++j) {
      scalar_power(rep.A[j], rep.A.size() > 1 ? "A_" + std::to_string(j + 1) + "^N" : "A^N");
    }
  }
  return out;
}

Eigen::VectorXcd fiducial_state(const Representation& rep) {
  if (rep.n_lo > 0 || rep.n_lo + rep.dim <= 0) throw ConstructionError("fiducial_state: basis does not contain n = 0");
  VectorXcd p = VectorXcd::Zero(rep.dim);
  p(rep.index(0)) = 1.0;
  double residual = 0.0;
  for (std::size_t j = 0; j < rep.A.size(); ++j) {
    residual = std::max(residual, (rep.A[j] * p - rep.flow.base.a[j] * p).norm());
  }
  residual = std::max(residual, (rep.B * (rep.C * p) - rep.flow.base.a0 * p).norm());
  residual = std::max(residual, std::abs(p.norm() - 1.0));
  if (residual > 1e-10) {
    throw ConstructionError("fiducial_state: eigen-residual " + std::to_string(residual) + " exceeds 1e-10");
  }
  return p;
}

Eigen::MatrixXcd pure_shift(const Representation& rep) {
  MatrixXcd S = MatrixXcd::Zero(rep.dim, rep.dim);
  for (int i = 0; i < rep.dim; ++i) {
    const int to = (i + 1) % rep.dim;
    if (rep.geometry == Geometry::Cylinder && i + 1 >= rep.dim) continue;
    const cplx m = rep.fact.mu(cplx((rep.n_lo + i + 1) * rep.hbar, 0.0));
    S(to, i) = rep.B(to, i) / m;
  }
  return S;
}

MonomialOperators monomial_operators(const DeformationFlow& flow, const FactorizationData& fact, int M) {
  const int dim = 2 * M + 1;
  const double h = flow.hbar;
  const double eps = fact.tau * h;
  MonomialOperators ops{MatrixXcd::Zero(dim, dim), MatrixXcd::Zero(dim, dim), MatrixXcd::Zero(dim, dim)};
  for (int i = 0; i < dim; ++i) {
    const int n = i - M;
    if (i + 1 < dim) ops.B(i + 1, i) = fact.factor_B(cplx((n + 1) * h, 0.0)) * std::exp(-eps * (n + 0.5));
    if (i > 0) ops.C(i - 1, i) = fact.factor_C(cplx(n * h, 0.0)) * std::exp(eps * (n - 0.5));
    ops.A(i, i) = flow.at(n * h).a[0];
  }
  return ops;
}

Eigen::VectorXcd orthonormal_scaling(const FactorizationData& fact, int M) {
  VectorXcd D(2 * M + 1);
  const double eps = fact.tau * fact.hbar;
  for (int i = 0; i < 2 * M + 1; ++i) {
    const int n = i - M;
    D(i) = std::exp(-fact.nu_factorial.log_at(n) - 0.5 * eps * n * n);
  }
  return D;
}

}  // namespace thetarep
