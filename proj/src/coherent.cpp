#include "thetarep/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thetarep/errors.hpp"
#include "thetarep/parallel.hpp"
#include "thetarep/theta.hpp"

namespace thetarep {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

constexpr double kLogTol = 39.14;

void require_match(const Representation& rep, const KernelContext& ctx) {
  if (rep.geometry != ctx.geometry || rep.n_lo != ctx.basis_lo() || rep.dim != ctx.basis_size()) {
    throw InputError("coherent: representation and kernel context describe different spaces");
  }
}

// Verified index range [lo, lo + count).
std::pair<int, int> verified_range(const KernelContext& ctx, int n_check) {
  if (ctx.geometry == Geometry::Torus) return {0, static_cast<int>(ctx.N)};
  if (n_check < 0 || n_check > ctx.M - 1) throw InputError("coherent: n_check must lie in [0, M - 1]");
  return {-n_check, 2 * n_check + 1};
}

// Sum over the measure grid of W(u) f(zbar) conj(e^(m)(zbar)) for each function f
// (given by monomial expansions) and each m in the verified range.
MatrixXcd integrate_against_basis(const KernelContext& ctx, const MeasureGrid& g,
                                  const std::vector<MonomialExpansion>& fs, int lo, int count) {
  const std::size_t n_u = g.u.size();
  std::vector<MatrixXcd> rows(n_u);
  parallel_for(n_u, [&](std::size_t k) {
    MatrixXcd acc = MatrixXcd::Zero(count, static_cast<Eigen::Index>(fs.size()));
    for (double v : g.v) {
      const cplx zbar(g.u[k], v);
      const auto e = basis_values(ctx, zbar);
      for (std::size_t c = 0; c < fs.size(); ++c) {
        const cplx f = evaluate_expansion(fs[c], zbar);
        for (int r = 0; r < count; ++r) {
          acc(r, static_cast<Eigen::Index>(c)) += f * std::conj(e[static_cast<std::size_t>(lo + r - ctx.basis_lo())]);
        }
      }
    }
    rows[k] = acc * g.weight_u[k];
  });
  MatrixXcd out = MatrixXcd::Zero(count, static_cast<Eigen::Index>(fs.size()));
  for (const auto& r : rows) out += r;
  return out;
}

std::vector<cplx> column(const VectorXcd& v) { return std::vector<cplx>(v.data(), v.data() + v.size()); }

MeasureGrid grid_for(const KernelContext& ctx, int n_check, int n_u, int n_v) {
  // Function-side images G e^(n) reach index n_check + 1.
  return measure_grid(ctx, ctx.geometry == Geometry::Torus ? 0 : n_check + 1, n_u, n_v);
}

// Function-side action of a generator on a monomial expansion.
MonomialExpansion apply_generator(const Representation& rep, const MonomialExpansion& f, Generator gen,
                                  int component) {
  const double h = rep.hbar;
  const double eps = rep.tau * h;
  MonomialExpansion out;
  out.j_lo = f.j_lo;
  out.a.assign(f.a.size() + 2, cplx(0.0));
  out.j_lo = f.j_lo - 1;
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    if (f.a[i] == cplx(0.0)) continue;
    const int j = f.j_lo + static_cast<int>(i);
    const double jd = j;
    const std::size_t slot = i + 1;  // index of exponent j in out
    switch (gen) {
      case Generator::Identity:
        out.a[slot] += f.a[i];
        break;
      case Generator::A:
        out.a[slot] += f.a[i] * rep.flow.at(jd * h).a[static_cast<std::size_t>(component)];
        break;
      case Generator::B:
        out.a[slot + 1] += f.a[i] * rep.fact.factor_B(cplx((jd + 1.0) * h, 0.0)) * std::exp(-eps * (jd + 0.5));
        break;
      case Generator::C:
        out.a[slot - 1] += f.a[i] * rep.fact.factor_C(cplx(jd * h, 0.0)) * std::exp(eps * (jd - 0.5));
        break;
    }
  }
  return out;
}

const MatrixXcd& generator_matrix(const Representation& rep, Generator gen, int component, const MatrixXcd& id) {
  switch (gen) {
    case Generator::A:
      return rep.A[static_cast<std::size_t>(component)];
    case Generator::B:
      return rep.B;
    case Generator::C:
      return rep.C;
    case Generator::Identity:
      break;
  }
  return id;
}

CheckReport tag(CheckReport c, const Representation& rep, const KernelContext& ctx, int n_u, int n_v) {
  c.with("example", rep.fact.name).with("geometry", rep.geometry == Geometry::Torus ? "torus" : "cylinder");
  if (rep.geometry == Geometry::Torus) {
    c.with("N", rep.N).with("m", ctx.m);
  } else {
    c.with("M", long(rep.M));
  }
  c.with("grid_u", long(n_u)).with("grid_v", long(n_v));
  return c;
}

// S^j seed for j in [lo, hi], S^{-1} taken as S^* (unitary on the torus; on
// the cylinder the truncated pure shift is a partial isometry and S^* lowers
// the index).
struct ShiftPowers {
  long lo = 0;
  long hi = -1;
  std::vector<VectorXcd> v;
};

ShiftPowers shift_powers(const Representation& rep, const KernelContext& ctx, const MatrixXcd& S,
                         const VectorXcd& seed, double u_lo, double u_hi) {
  const double eps = ctx.eps();
  const double w = std::sqrt(2.0 * kLogTol / eps) + 5.0;
  ShiftPowers p;
  p.lo = static_cast<long>(std::floor(u_lo / eps - w));
  p.hi = static_cast<long>(std::ceil(u_hi / eps + w));
  if (rep.geometry == Geometry::Cylinder) {
    p.lo = std::max<long>(p.lo, -rep.M);
    p.hi = std::min<long>(p.hi, rep.M);
  }
  p.v.assign(static_cast<std::size_t>(p.hi - p.lo + 1), VectorXcd());
  const MatrixXcd Sinv = S.adjoint();
  VectorXcd v = seed;
  for (long j = 0; j <= p.hi; ++j) {
    if (j >= p.lo) p.v[static_cast<std::size_t>(j - p.lo)] = v;
    v = S * v;
  }
  v = Sinv * seed;
  for (long j = -1; j >= p.lo; --j) {
    if (j <= p.hi) p.v[static_cast<std::size_t>(j - p.lo)] = v;
    v = Sinv * v;
  }
  return p;
}

// sum_j conj(nu_!(j hbar))^{-1} exp(-eps j^2 / 2 + j z) S^j seed.
VectorXcd shift_series(const KernelContext& ctx, const ShiftPowers& p, cplx z) {
  const double eps = ctx.eps();
  const double w = std::sqrt(2.0 * kLogTol / eps) + 5.0;
  const long lo = std::max<long>(p.lo, static_cast<long>(std::floor(z.real() / eps - w)));
  const long hi = std::min<long>(p.hi, static_cast<long>(std::ceil(z.real() / eps + w)));
  VectorXcd out = VectorXcd::Zero(p.v.empty() ? 0 : p.v.front().size());
  for (long j = lo; j <= hi; ++j) {
    const double jd = static_cast<double>(j);
    const cplx log_nu =
        ctx.fact.nu_factorial.is_unit() ? cplx(0.0) : ctx.fact.nu_factorial.log_at(static_cast<int>(j));
    out += std::exp(-std::conj(log_nu) - 0.5 * eps * jd * jd + jd * z) * p.v[static_cast<std::size_t>(j - p.lo)];
  }
  return out;
}

}  // namespace

CoherentState coherent_state(const Representation& rep, const KernelContext& ctx, cplx z) {
  require_match(rep, ctx);
  const auto e = basis_values(ctx, std::conj(z));
  CoherentState s;
  s.z = z;
  s.n_lo = rep.n_lo;
  s.coefficients.resize(rep.dim);
  for (int i = 0; i < rep.dim; ++i) s.coefficients(i) = std::conj(e[static_cast<std::size_t>(i)]);
  return s;
}

CoherentState coherent_state_via_shift(const Representation& rep, const KernelContext& ctx, cplx z) {
  require_match(rep, ctx);
  CoherentState s;
  s.z = z;
  s.n_lo = rep.n_lo;
  const ShiftPowers p = shift_powers(rep, ctx, pure_shift(rep), fiducial_state(rep), z.real(), z.real());
  s.coefficients = shift_series(ctx, p, z);
  return s;
}

cplx coherent_overlap(const CoherentState& w, const CoherentState& z) {
  if (w.n_lo != z.n_lo || w.coefficients.size() != z.coefficients.size()) {
    throw InputError("coherent_overlap: states live in different spaces");
  }
  return z.coefficients.dot(w.coefficients);  // sum conj(z_n) w_n
}

PartitionResult partition_of_unity(const Representation& rep, const KernelContext& ctx, int n_u, int n_v, int n_check,
                                   double tol) {
  require_match(rep, ctx);
  const auto [lo, count] = verified_range(ctx, n_check);
  const MeasureGrid g = measure_grid(ctx, ctx.geometry == Geometry::Torus ? 0 : n_check, n_u, n_v);
  std::vector<MonomialExpansion> fs;
  for (int c = 0; c < count; ++c) {
    std::vector<cplx> psi(static_cast<std::size_t>(ctx.basis_size()), 0.0);
    psi[static_cast<std::size_t>(lo + c - ctx.basis_lo())] = 1.0;
    fs.push_back(monomial_expansion(ctx, psi, g.u.front(), g.u.back()));
  }
  // Entry (n, n') = int W conj(e^(n)) e^(n') = int W c_n conj(c_n').
  PartitionResult r;
  r.integral = integrate_against_basis(ctx, g, fs, lo, count);
  r.n_lo = lo;
  r.window_tail = g.window_tail;
  const double dev = (r.integral - MatrixXcd::Identity(count, count)).cwiseAbs().maxCoeff();
  r.report = tag(make_check("partition_of_unity", dev, tol), rep, ctx, static_cast<int>(g.u.size()),
                 static_cast<int>(g.v.size()));
  r.report.with("checked_range", "[" + std::to_string(lo) + ", " + std::to_string(lo + count - 1) + "]")
      .with("window_tail", g.window_tail);
  return r;
}

TransformResult coherent_transform(const Representation& rep, const KernelContext& ctx, const MatrixXcd& psi, int n_u,
                                   int n_v, int n_check) {
  require_match(rep, ctx);
  if (psi.rows() != rep.dim) throw InputError("coherent_transform: coefficient rows must match the representation");
  const auto [lo, count] = verified_range(ctx, n_check);
  const MeasureGrid g = grid_for(ctx, n_check, n_u, n_v);
  std::vector<MonomialExpansion> fs;
  for (Eigen::Index c = 0; c < psi.cols(); ++c) {
    fs.push_back(monomial_expansion(ctx, column(psi.col(c)), g.u.front(), g.u.back()));
  }
  TransformResult t;
  t.values = integrate_against_basis(ctx, g, fs, lo, count);
  t.n_lo = lo;
  t.window_tail = g.window_tail;
  return t;
}

cplx inverse_map(const KernelContext& ctx, const VectorXcd& p, cplx zbar) {
  if (p.size() != ctx.basis_size()) throw InputError("inverse_map: vector has the wrong length");
  const auto e = basis_values(ctx, zbar);
  cplx sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) sum += p(i) * e[static_cast<std::size_t>(i)];
  return sum;
}

std::vector<CheckReport> transform_checks(const Representation& rep, const KernelContext& ctx, int n_u, int n_v,
                                          int n_check, double tol) {
  const auto [lo, count] = verified_range(ctx, n_check);
  MatrixXcd psi = MatrixXcd::Zero(rep.dim, count);
  for (int c = 0; c < count; ++c) psi(rep.index(lo + c), c) = 1.0;
  const TransformResult t = coherent_transform(rep, ctx, psi, n_u, n_v, n_check);
  const MatrixXcd id = MatrixXcd::Identity(count, count);
  const double round_trip = (t.values - id).cwiseAbs().maxCoeff();
  const double gram = (t.values.adjoint() * t.values - id).cwiseAbs().maxCoeff();
  std::vector<CheckReport> out;
  const std::string range = "[" + std::to_string(lo) + ", " + std::to_string(lo + count - 1) + "]";
  out.push_back(tag(make_check("transform_round_trip", round_trip, tol), rep, ctx, n_u, n_v)
                    .with("checked_range", range)
                    .with("window_tail", t.window_tail));
  out.push_back(tag(make_check("transform_unitarity", gram, tol), rep, ctx, n_u, n_v)
                    .with("checked_range", range)
                    .with("window_tail", t.window_tail));
  return out;
}

std::string to_string(Generator g) {
  switch (g) {
    case Generator::Identity:
      return "identity";
    case Generator::A:
      return "A";
    case Generator::B:
      return "B";
    case Generator::C:
      return "C";
  }
  return "?";
}

CheckReport intertwining_check(const Representation& rep, const KernelContext& ctx, Generator gen, int component,
                               int n_u, int n_v, int n_check, double tol) {
  require_match(rep, ctx);
  if (gen == Generator::A && (component < 0 || component >= static_cast<int>(rep.A.size()))) {
    throw InputError("intertwining_check: component out of range");
  }
  const auto [lo, count] = verified_range(ctx, n_check);
  const MeasureGrid g = grid_for(ctx, n_check, n_u, n_v);
  // Cylinder: the images of e^(n), |n| <= n_check, stay inside |n| <= n_check + 1.
  const int wide_lo = ctx.geometry == Geometry::Torus ? lo : lo - 1;
  const int wide_count = ctx.geometry == Geometry::Torus ? count : count + 2;

  std::vector<MonomialExpansion> plain;
  std::vector<MonomialExpansion> moved;
  for (int c = 0; c < count; ++c) {
    std::vector<cplx> psi(static_cast<std::size_t>(ctx.basis_size()), 0.0);
    psi[static_cast<std::size_t>(lo + c - ctx.basis_lo())] = 1.0;
    // Wider u range on the torus so the shifted monomials stay covered.
    const MonomialExpansion f = monomial_expansion(ctx, psi, g.u.front() - ctx.eps(), g.u.back() + ctx.eps());
    plain.push_back(f);
    moved.push_back(apply_generator(rep, f, gen, component));
  }
  const MatrixXcd t_plain = integrate_against_basis(ctx, g, plain, wide_lo, wide_count);
  const MatrixXcd t_moved = integrate_against_basis(ctx, g, moved, wide_lo, wide_count);

  const MatrixXcd id = MatrixXcd::Identity(rep.dim, rep.dim);
  const MatrixXcd& G = generator_matrix(rep, gen, component, id);
  const MatrixXcd G_block = G.block(rep.index(wide_lo), rep.index(wide_lo), wide_count, wide_count);
  const MatrixXcd rhs = G_block * t_plain;
  const double scale = std::max(1.0, G_block.cwiseAbs().maxCoeff());
  const double residual = (t_moved - rhs).cwiseAbs().maxCoeff() / scale;
  CheckReport r = tag(make_check("intertwining", residual, tol), rep, ctx, static_cast<int>(g.u.size()),
                      static_cast<int>(g.v.size()));
  r.with("generator", to_string(gen)).with("component", long(component));
  r.with("checked_range", "[" + std::to_string(lo) + ", " + std::to_string(lo + count - 1) + "]");
  r.with("window_tail", g.window_tail);
  return r;
}

CheckReport embedding_check(const Representation& rep, const KernelContext& ctx, int n_u, int n_v, int n_check,
                            double tol) {
  require_match(rep, ctx);
  const auto [lo, count] = verified_range(ctx, n_check);
  const int d = rep.dim;
  MatrixXcd S2 = MatrixXcd::Zero(2 * d, 2 * d);
  const MatrixXcd S = pure_shift(rep);
  S2.topLeftCorner(d, d) = S;
  S2.bottomRightCorner(d, d) = S;
  VectorXcd seed = VectorXcd::Zero(2 * d);
  seed.head(d) = fiducial_state(rep);

  const MeasureGrid g = measure_grid(ctx, ctx.geometry == Geometry::Torus ? 0 : n_check, n_u, n_v);
  std::vector<MonomialExpansion> fs;
  for (int c = 0; c < count; ++c) {
    std::vector<cplx> psi(static_cast<std::size_t>(ctx.basis_size()), 0.0);
    psi[static_cast<std::size_t>(lo + c - ctx.basis_lo())] = 1.0;
    fs.push_back(monomial_expansion(ctx, psi, g.u.front(), g.u.back()));
  }
  // T(psi) = sum_grid W psi(zbar) P_z with P_z in the doubled space.
  const ShiftPowers powers = shift_powers(rep, ctx, S2, seed, g.u.front(), g.u.back());
  const std::size_t n_rows = g.u.size();
  std::vector<MatrixXcd> rows(n_rows);
  parallel_for(n_rows, [&](std::size_t k) {
    MatrixXcd acc = MatrixXcd::Zero(2 * d, count);
    for (double v : g.v) {
      const cplx zbar(g.u[k], v);
      const VectorXcd pz = shift_series(ctx, powers, std::conj(zbar));
      for (int c = 0; c < count; ++c) acc.col(c) += evaluate_expansion(fs[static_cast<std::size_t>(c)], zbar) * pz;
    }
    rows[k] = acc * g.weight_u[k];
  });
  MatrixXcd T = MatrixXcd::Zero(2 * d, count);
  for (const auto& r : rows) T += r;
  MatrixXcd expect = MatrixXcd::Zero(2 * d, count);
  for (int c = 0; c < count; ++c) expect(rep.index(lo + c), c) = 1.0;
  const double residual = (T - expect).cwiseAbs().maxCoeff();
  CheckReport r = tag(make_check("double_copy_embedding", residual, tol), rep, ctx, static_cast<int>(g.u.size()),
                      static_cast<int>(g.v.size()));
  r.with("second_block_max", T.bottomRows(d).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace thetarep
