#include "thetarep/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "thetarep/coherent.hpp"
#include "thetarep/errors.hpp"
#include "thetarep/quadrature.hpp"
#include "thetarep/special.hpp"

namespace thetarep {

namespace {

constexpr double kPi = std::numbers::pi;

using Params = std::map<std::string, double>;

void reject_unknown(const std::string& example, const Params& params, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : params) {
    if (!allowed.count(k)) throw InputError("example " + example + ": unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw InputError("example " + example + ": parameter '" + k + "' is not finite");
  }
}

double get(const Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

long get_integer(const Params& p, const std::string& key, long fallback) {
  const double v = get(p, key, static_cast<double>(fallback));
  if (std::abs(v - std::round(v)) > 1e-9) throw InputError("parameter '" + key + "' must be an integer");
  return std::lround(v);
}

Scenario build_sklyanin(const Params& params) {
  reject_unknown("sklyanin", params, {"phi", "kappa1", "psi", "a0", "alpha", "tau", "N", "hbar"});
  if (std::abs(get(params, "hbar", 1.0) - 1.0) > 0.0) throw InputError("sklyanin: hbar is fixed to 1");
  const double phi = get(params, "phi", kPi / 2.0);
  const double kappa1 = get(params, "kappa1", 1.0);
  const double psi = get(params, "psi", 0.0);
  const double a0 = get(params, "a0", 2.0);
  const double alpha = get(params, "alpha", 0.0);
  const double tau = get(params, "tau", 1.0);
  Scenario s;
  s.example = "sklyanin";
  s.flow = sklyanin_flow(phi, kappa1, psi, a0);
  s.surface = classify_surface(s.flow, ScanSpec{});
  if (s.surface.kind != SurfaceKind::Torus || !s.surface.resonance) {
    throw ParameterError("sklyanin: phi = " + std::to_string(phi) + " gives no resonant torus");
  }
  const Resonance res = *s.surface.resonance;
  if (params.count("N") && get_integer(params, "N", 0) != res.N) {
    throw InputError("sklyanin: N = " + std::to_string(get_integer(params, "N", 0)) +
                     " disagrees with the resonance N = " + std::to_string(res.N));
  }
  s.fact = factorization_sklyanin(phi, kappa1, psi, a0, tau, res.N, alpha);
  s.rep = build_torus_rep(s.flow, s.fact, res.N, alpha);
  s.ctx = make_torus_context(s.fact, res.N, res.m);
  return s;
}

Scenario build_su11(const std::string& example, const Params& params) {
  reject_unknown(example, params, {"a0", "a", "hbar", "tau", "M"});
  const double a0 = get(params, "a0", 1.25);
  const double a = get(params, "a", 0.0);
  const double hbar = get(params, "hbar", 1.0);
  const double tau = get(params, "tau", 1.0);
  const long M = get_integer(params, "M", 64);
  if (M < 8 || M > 4096) throw InputError(example + ": M must lie in [8, 4096]");
  Scenario s;
  s.example = example;
  s.flow = su11_flow(a0, a, hbar);
  s.surface = classify_surface(s.flow, ScanSpec{});
  const int L = std::max(256, static_cast<int>(M) + 64);
  s.fact = example == "su11-v1" ? factorization_su11_v1(a0, a, hbar, tau, L) : factorization_su11_v2(a0, a, hbar, tau, L);
  s.rep = build_cylinder_rep(s.flow, s.fact, static_cast<int>(M));
  s.ctx = make_cylinder_context(s.fact, static_cast<int>(M));
  return s;
}

double tol_for(const std::map<std::string, double>& overrides, const std::string& name, double fallback) {
  const auto it = overrides.find(name);
  return it == overrides.end() ? fallback : it->second;
}

CheckReport tagged(CheckReport c, const Scenario& s) {
  c.with("example", s.example);
  if (s.rep.geometry == Geometry::Torus) {
    c.with("N", s.rep.N).with("alpha", s.rep.alpha);
  } else {
    c.with("M", long(s.rep.M));
  }
  return c;
}

// Deterministic sample points z = u + i v in the fundamental domain.
std::vector<cplx> sample_points(const Scenario& s, int count) {
  std::mt19937_64 rng(20240611);
  const double eps = s.ctx.eps();
  const double u_lo = s.rep.geometry == Geometry::Torus ? 0.0 : -3.0 * std::sqrt(eps);
  const double u_hi = s.rep.geometry == Geometry::Torus ? eps * static_cast<double>(s.rep.N) : 3.0 * std::sqrt(eps);
  std::uniform_real_distribution<double> du(u_lo, u_hi);
  std::uniform_real_distribution<double> dv(0.0, 2.0 * kPi);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) {
    const double u = du(rng);
    out.emplace_back(u, dv(rng));
  }
  return out;
}

void kernel_checks(const Scenario& s, const std::map<std::string, double>& tol, std::vector<CheckReport>& out) {
  const KernelContext& ctx = s.ctx;
  if (s.rep.geometry == Geometry::Torus) {
    double fourier = 0.0;
    double closed = 0.0;
    const int n = 64;
    const double period = ctx.eps() * static_cast<double>(ctx.N);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const cplx zbar(period * i / n, 2.0 * kPi * j / n);
        const cplx z(period * (n - 1 - i) / n * 0.7, 2.0 * kPi * (j * 7 % n) / n);
        const cplx k = kernel_torus(ctx, zbar, z);
        const double scale = std::max(1e-300, std::abs(kernel_torus(ctx, zbar, std::conj(zbar))) +
                                                  std::abs(kernel_torus(ctx, std::conj(z), z)));
        fourier = std::max(fourier, std::abs(kernel_torus_fourier(ctx, zbar, z) - k) / scale);
        if (ctx.weights.is_unit()) closed = std::max(closed, std::abs(kernel_torus_closed_form(ctx, zbar, z) - k) / scale);
      }
    }
    out.push_back(tagged(make_check("kernel_fourier_vs_basis", fourier, tol_for(tol, "kernel_fourier_vs_basis", 1e-10)), s)
                      .with("grid", "64x64"));
    if (ctx.weights.is_unit()) {
      out.push_back(tagged(make_check("kernel_closed_form", closed, tol_for(tol, "kernel_closed_form", 1e-10)), s)
                        .with("grid", "64x64")
                        .with("parity", ctx.N % 2 == 0 ? "even" : "odd"));
    }
    for (auto& c : kernel_torus_difference_system_check(ctx, 16, 16, 1e-9)) {
      c.tolerance = tol_for(tol, c.check_name, c.tolerance);
      c.pass = c.residual <= c.tolerance;
      out.push_back(c);
    }
    return;
  }
  // Cylinder: kernel against the truncated basis sum at conjugate pairs.
  double diff = 0.0;
  for (const cplx& z : sample_points(s, 20)) {
    const cplx zbar = std::conj(z);
    const auto e = basis_values(ctx, zbar);
    double sum = 0.0;
    for (const cplx& v : e) sum += std::norm(v);
    const cplx k = kernel_cylinder(ctx, zbar, z);
    diff = std::max(diff, std::abs(k - sum) / sum);
  }
  out.push_back(tagged(make_check("kernel_basis_sum", diff, tol_for(tol, "kernel_basis_sum", 1e-10)), s));
}

void factorization_checks(const Scenario& s, const std::map<std::string, double>& tol, std::vector<CheckReport>& out) {
  const FactorizationData& f = s.fact;
  const double h = f.hbar;
  // g-equation: (1/hbar) int_{t-hbar}^t g = ln nu(t) (mod 2 pi i).
  double defect = 0.0;
  double closed = 0.0;
  double cross = 0.0;
  const bool has_g = static_cast<bool>(f.g);
  if (has_g) {
    ComplexFn series = f.g;
    if (!f.nu_is_unit) series = solve_g_series(f.nu_log_derivative, GAsymptotics{-1.0, 0.0, 0.0}, h);
    for (int i = 0; i <= 16; ++i) {
      const double t = -4.0 + 0.5 * i;
      const cplx integral = quad::integrate_gk([&](double x) { return series(cplx(x, 0.0)); }, t - h, t) / h;
      const cplx d = std::exp(integral - std::log(f.nu(cplx(t, 0.0))));
      defect = std::max(defect, std::abs(d - 1.0));
      closed = std::max(closed, std::abs(series(cplx(t, 0.0)) - f.g(cplx(t, 0.0))));
    }
    for (int n = -8; n <= 8; ++n) {
      const cplx lattice = f.nu_factorial.value_at(n);
      const cplx cont = nu_factorial_continuous(f.g, cplx(n * h, 0.0), h);
      cross = std::max(cross, std::abs(cont - lattice) / std::abs(lattice));
    }
  }
  out.push_back(tagged(make_check("g_equation_defect", defect, tol_for(tol, "g_equation_defect", 1e-9)), s));
  if (!f.nu_is_unit) {
    out.push_back(tagged(make_check("g_series_closed_form", closed, tol_for(tol, "g_series_closed_form", 1e-8)), s));
  }
  out.push_back(tagged(make_check("nu_factorial_cross_check", cross, tol_for(tol, "nu_factorial_cross_check", 1e-9)), s)
                    .with("range", "[-8, 8]"));
}

}  // namespace

std::vector<std::string> example_names() { return {"sklyanin", "su11-v1", "su11-v2"}; }

Scenario build_scenario(const std::string& example, const std::map<std::string, double>& params) {
  if (example == "sklyanin") return build_sklyanin(params);
  if (example == "su11-v1" || example == "su11-v2") return build_su11(example, params);
  throw InputError("unknown example '" + example + "' (expected sklyanin, su11-v1 or su11-v2)");
}

double power_identity_residual(const Representation& rep) {
  if (rep.geometry != Geometry::Torus) throw InputError("power_identity_residual: needs a torus representation");
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(rep.dim, rep.dim);
  for (long i = 0; i < rep.N; ++i) P = P * rep.B;
  double log_f = 0.0;
  for (long k = 1; k <= rep.N; ++k) log_f += std::log(rep.fact.profile(static_cast<double>(k) * rep.hbar));
  const double root = std::exp(0.5 * log_f);
  const cplx target = root * std::exp(cplx(0.0, rep.alpha));
  return (P - target * Eigen::MatrixXcd::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff() / root;
}

std::vector<CheckReport> run_verify_suite(const Scenario& s, const std::map<std::string, double>& tol) {
  std::vector<CheckReport> out;
  const bool torus = s.rep.geometry == Geometry::Torus;
  const double relation_tol = torus ? 1e-11 : 1e-12;
  for (auto& c : verify_relations(s.rep, relation_tol)) {
    c.tolerance = tol_for(tol, c.check_name, c.tolerance);
    c.pass = c.residual <= c.tolerance;
    out.push_back(c);
  }
  if (s.example == "sklyanin") {
    for (auto& c : verify_sklyanin_original(s.rep, 1e-11)) {
      c.tolerance = tol_for(tol, c.check_name, c.tolerance);
      c.pass = c.residual <= c.tolerance;
      out.push_back(c);
    }
  }
  for (const auto& cv : casimir_scalars(s.rep)) {
    if (cv.name == "B^N" || cv.name.find("^N") != std::string::npos) continue;
    const double scale = std::max(1.0, std::abs(cv.value));
    const std::string name = "casimir_constant_" + cv.name;
    out.push_back(tagged(make_check(name, cv.deviation / scale, tol_for(tol, name, 1e-10)), s)
                      .with("value_re", cv.value.real())
                      .with("value_im", cv.value.imag()));
  }
  if (torus) {
    out.push_back(tagged(make_check("power_identity_BN", power_identity_residual(s.rep), tol_for(tol, "power_identity_BN", 1e-10)), s));
  }
  kernel_checks(s, tol, out);
  factorization_checks(s, tol, out);

  const KernelContext& ctx = s.ctx;
  const int n_check = torus ? 0 : 4;
  const double coherent_tol = torus ? 1e-6 : 1e-5;
  const int grid = 128;

  if (torus) {
    const double q = quantization_integral(ctx, grid, grid);
    out.push_back(tagged(make_check("quantization_integral", std::abs(q - static_cast<double>(ctx.N)),
                                    tol_for(tol, "quantization_integral", 1e-6)),
                         s)
                      .with("value", q)
                      .with("grid", "128x128"));
  }

  // Integral norms of basis vectors.
  {
    const int lo = torus ? 0 : -n_check;
    const int hi = torus ? static_cast<int>(ctx.N) - 1 : n_check;
    double dev = 0.0;
    for (int n = lo; n <= hi; ++n) {
      std::vector<cplx> psi(static_cast<std::size_t>(ctx.basis_size()), 0.0);
      psi[static_cast<std::size_t>(n - ctx.basis_lo())] = 1.0;
      dev = std::max(dev, std::abs(norm_quadrature(ctx, psi, grid, 64) - 1.0));
    }
    const double fallback = ctx.fact.nu_is_unit ? 1e-8 : 1e-6;
    out.push_back(tagged(make_check("basis_norm_quadrature", dev, tol_for(tol, "basis_norm_quadrature", fallback)), s)
                      .with("checked_range", "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]"));
  }

  // Coherent states: |P_z|^2 = K and the literal shift construction.
  {
    double norm_dev = 0.0;
    double route_dev = 0.0;
    double overlap_dev = 0.0;
    const auto pts = sample_points(s, 24);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const cplx z = pts[i];
      const CoherentState a = coherent_state(s.rep, ctx, z);
      const CoherentState b = coherent_state_via_shift(s.rep, ctx, z);
      const double k = kernel(ctx, std::conj(z), z).real();
      norm_dev = std::max(norm_dev, std::abs(a.coefficients.squaredNorm() - k) / k);
      route_dev = std::max(route_dev, (a.coefficients - b.coefficients).norm() / a.coefficients.norm());
      const cplx w = pts[(i + 1) % pts.size()];
      const CoherentState cw = coherent_state(s.rep, ctx, w);
      // Linear in the first slot: (P_w, P_z) = K(zbar | w) = conj K(wbar | z).
      const cplx kw = kernel(ctx, std::conj(z), w);
      const double scale = std::sqrt(k * kernel(ctx, std::conj(w), w).real());
      overlap_dev = std::max(overlap_dev, std::abs(coherent_overlap(cw, a) - kw) / scale);
    }
    out.push_back(tagged(make_check("coherent_norm_kernel", norm_dev, tol_for(tol, "coherent_norm_kernel", 1e-9)), s));
    out.push_back(tagged(make_check("coherent_shift_route", route_dev, tol_for(tol, "coherent_shift_route", 1e-9)), s));
    out.push_back(tagged(make_check("coherent_overlap_kernel", overlap_dev, tol_for(tol, "coherent_overlap_kernel", 1e-9)), s));
  }

  {
    PartitionResult p = partition_of_unity(s.rep, ctx, grid, grid, n_check, tol_for(tol, "partition_of_unity", coherent_tol));
    out.push_back(p.report);
  }
  for (auto& c : transform_checks(s.rep, ctx, grid, grid, n_check, coherent_tol)) {
    c.tolerance = tol_for(tol, c.check_name, c.tolerance);
    c.pass = c.residual <= c.tolerance;
    out.push_back(c);
  }
  for (Generator g : {Generator::A, Generator::B, Generator::C}) {
    for (int comp = 0; comp < (g == Generator::A ? static_cast<int>(s.rep.A.size()) : 1); ++comp) {
      out.push_back(intertwining_check(s.rep, ctx, g, comp, grid, grid, n_check, tol_for(tol, "intertwining", coherent_tol)));
    }
  }
  out.push_back(embedding_check(s.rep, ctx, grid, grid, n_check, tol_for(tol, "double_copy_embedding", coherent_tol)));
  return out;
}

}  // namespace thetarep
